#pragma once

#include <memory>
#include <string>
#include <vector>

#include "radford/linalg.hpp"

namespace rad {

/// One term c * (e_a (x) e_b) of an element of H (x) H.
struct PairTerm {
    int a, b;
    ThetaScalar coeff;
};
using TensorVec = std::vector<PairTerm>;

TensorVec tv_normalize(TensorVec t);
TensorVec tv_add(const TensorVec& x, const TensorVec& y);
TensorVec tv_scale(const TensorVec& x, const ThetaScalar& f);
bool tv_equal(const TensorVec& x, const TensorVec& y);

/// Finite-dimensional Hopf algebra as basis-indexed structure constants.
struct HopfAlgebra {
    std::shared_ptr<const ScalarContext> ctx;
    std::string name;
    int dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<std::vector<SparseVec>> mult;  // mult[i][j] = e_i e_j
    SparseVec unit;
    std::vector<TensorVec> comult;             // Delta(e_k)
    std::vector<ThetaScalar> counit;
    SparseMatrix antipode;                     // column j = S(e_j)
    SparseMatrix antipode_inv;

    SparseVec mul(const SparseVec& x, const SparseVec& y) const;
    SparseVec mul(int i, int j) const { return mult[i][j]; }
    TensorVec delta(const SparseVec& x) const;
    ThetaScalar eps(const SparseVec& x) const;
    SparseVec S(const SparseVec& x) const { return antipode.apply(x); }
    SparseVec S_inv(const SparseVec& x) const { return antipode_inv.apply(x); }
    /// product in H (x) H (componentwise)
    TensorVec tensor_mul(const TensorVec& x, const TensorVec& y) const;
    /// Delta^2 = (Delta (x) id) Delta as (a,b,c) triples
    std::vector<std::tuple<int, int, int, ThetaScalar>> delta2(int k) const;
};

struct AxiomCheck {
    std::string axiom;
    bool pass = false;
    std::string detail;  // first failing location, empty when passing
};

struct HopfReport {
    std::vector<AxiomCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return c.axiom + ": " + c.detail;
        return "";
    }
};

/// H_{p,-1}: basis {a^i, b a^i}, relations a^2p = 1, b^2 = 0, ba = xi ab.
HopfAlgebra build_H(std::shared_ptr<const ScalarContext> ctx);
/// Radford algebra A_{p,-1}: basis {g^i, x g^i}, x^2 = 1 - g^2, gx = -xg.
HopfAlgebra build_A(std::shared_ptr<const ScalarContext> ctx);
/// gr A_{p,-1} = B(X) # k[C_2p]: same basis as A but x^2 = 0.
HopfAlgebra build_grA(std::shared_ptr<const ScalarContext> ctx);

/// index of b^gamma a^i (resp. x^gamma g^i) in the builders' bases
inline int ha_index(int p, int gamma, int i) {
    int n = 2 * p;
    int ii = ((i % n) + n) % n;
    return gamma * n + ii;
}

/// Exact verification of every Hopf axiom; failures become report entries.
HopfReport verify_hopf(const HopfAlgebra& h);

/// Order of the antipode as a linear map (smallest k with S^k = id), searched
/// up to `cap`; 0 when not found.
int antipode_order(const HopfAlgebra& h, int cap = 64);

/// Dual Hopf algebra by transposing structure tensors.
HopfAlgebra dual(const HopfAlgebra& h);

struct HopfMorphism {
    const HopfAlgebra* source = nullptr;
    const HopfAlgebra* target = nullptr;
    SparseMatrix matrix;  // column j = image of e_j

    bool is_algebra_map(std::string* fail = nullptr) const;
    bool is_coalgebra_map(std::string* fail = nullptr) const;
    bool is_bijective() const;
};

struct DualIsoResult {
    HopfAlgebra A;       // A_{p,-1}
    HopfAlgebra Hdual;   // H_{p,-1}^*
    SparseMatrix phi;    // the Lemma 3.3 map on bases
    bool ok = false;
    std::string detail;
};
/// Builds phi : A_{p,-1} -> H_{p,-1}^* on the stated basis images and checks
/// it is a bijective algebra and coalgebra map. Throws IsoCheckFailed when
/// `must_pass`, otherwise reports in the result.
DualIsoResult dual_iso_check(std::shared_ptr<const ScalarContext> ctx, bool must_pass = false);

/// Drinfeld double D(H_{p,-1}^cop) on the basis A (x) H with the crossed
/// product; exposes the embedded generators for relation tests.
struct DrinfeldDouble {
    HopfAlgebra D;
    int dimA = 0, dimH = 0;
    // D-basis index of alpha (x) h
    int index(int alpha_idx, int h_idx) const { return alpha_idx * dimH + h_idx; }
    SparseVec embed_A(const SparseVec& alpha) const;
    SparseVec embed_H(const SparseVec& h) const;
    SparseVec gen_a, gen_b, gen_g, gen_x;  // embedded generators
};
DrinfeldDouble drinfeld_double(std::shared_ptr<const ScalarContext> ctx, int cap = kDefaultDimCap);

/// All group-like elements (Delta v = v (x) v, v != 0). Searches single basis
/// elements, two-element supports, and convolution blocks (characters of a
/// basis-induced abelian group law), which covers every algebra built here.
std::vector<SparseVec> group_likes(const HopfAlgebra& h);

/// Basis of { v : Delta v = v (x) g1 + g2 (x) v } for group-likes g1, g2.
std::vector<SparseVec> skew_primitives(const HopfAlgebra& h, const SparseVec& g1,
                                       const SparseVec& g2);

/// Braided Hopf algebra R in YD(H) given by structure constants plus the
/// Yetter-Drinfeld action/coaction, with representative generator words for
/// every basis element (used to extend the antipode anti-multiplicatively).
struct BraidedHopf {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<SparseVec>> mult;
    SparseVec unit;  // coordinates of 1_R
    std::vector<TensorVec> comult;
    std::vector<ThetaScalar> counit;
    std::vector<std::vector<int>> words;      // basis elt as product of degree-1 gens
    std::vector<SparseMatrix> action;         // one dim x dim matrix per H basis elt
    std::vector<TensorVec> coaction;          // delta(e_r) = sum c * e_h (x) e_r'
};

/// Radford biproduct R # H. Verifies the YD compatibility of the supplied
/// action/coaction first (YDViolation otherwise).
HopfAlgebra bosonization(const BraidedHopf& r, const HopfAlgebra& h);

/// JSON rendering with stable ordering (golden tests). Returns a string to
/// keep nlohmann out of this header.
std::string hopf_to_json(const HopfAlgebra& h);

} // namespace rad
