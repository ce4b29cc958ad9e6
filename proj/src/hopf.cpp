#include "radford/hopf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "radford/util.hpp"

namespace rad {

TensorVec tv_normalize(TensorVec t) {
    std::sort(t.begin(), t.end(), [](const PairTerm& x, const PairTerm& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    TensorVec out;
    for (auto& e : t) {
        if (!out.empty() && out.back().a == e.a && out.back().b == e.b)
            out.back().coeff = out.back().coeff + e.coeff;
        else
            out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const PairTerm& e) { return e.coeff.is_zero(); }),
              out.end());
    return out;
}

TensorVec tv_add(const TensorVec& x, const TensorVec& y) {
    TensorVec t = x;
    t.insert(t.end(), y.begin(), y.end());
    return tv_normalize(std::move(t));
}

TensorVec tv_scale(const TensorVec& x, const ThetaScalar& f) {
    if (f.is_zero()) return {};
    TensorVec out;
    out.reserve(x.size());
    for (const auto& e : x) {
        ThetaScalar c = e.coeff * f;
        if (!c.is_zero()) out.push_back({e.a, e.b, std::move(c)});
    }
    return out;
}

bool tv_equal(const TensorVec& x, const TensorVec& y) {
    TensorVec a = tv_normalize(x), b = tv_normalize(y);
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].a != b[i].a || a[i].b != b[i].b || a[i].coeff != b[i].coeff) return false;
    return true;
}

SparseVec HopfAlgebra::mul(const SparseVec& x, const SparseVec& y) const {
    SparseVec acc;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) acc = sv_axpy(acc, ci * cj, mult[i][j]);
    return acc;
}

TensorVec HopfAlgebra::delta(const SparseVec& x) const {
    TensorVec acc;
    for (const auto& [i, c] : x) {
        TensorVec t = tv_scale(comult[i], c);
        acc.insert(acc.end(), t.begin(), t.end());
    }
    return tv_normalize(std::move(acc));
}

ThetaScalar HopfAlgebra::eps(const SparseVec& x) const {
    ThetaScalar acc;
    for (const auto& [i, c] : x) acc = acc + c * counit[i];
    return acc;
}

TensorVec HopfAlgebra::tensor_mul(const TensorVec& x, const TensorVec& y) const {
    TensorVec acc;
    for (const auto& u : x)
        for (const auto& v : y) {
            ThetaScalar c = u.coeff * v.coeff;
            if (c.is_zero()) continue;
            const SparseVec& left = mult[u.a][v.a];
            const SparseVec& right = mult[u.b][v.b];
            for (const auto& [i, ci] : left)
                for (const auto& [j, cj] : right) acc.push_back({i, j, c * ci * cj});
        }
    return tv_normalize(std::move(acc));
}

namespace {

using Triple = std::tuple<int, int, int, ThetaScalar>;

void triple_normalize(std::vector<Triple>& w) {
    std::sort(w.begin(), w.end(), [](const Triple& x, const Triple& y) {
        return std::tie(std::get<0>(x), std::get<1>(x), std::get<2>(x)) <
               std::tie(std::get<0>(y), std::get<1>(y), std::get<2>(y));
    });
    std::vector<Triple> m;
    for (auto& e : w) {
        if (!m.empty() && std::get<0>(m.back()) == std::get<0>(e) &&
            std::get<1>(m.back()) == std::get<1>(e) && std::get<2>(m.back()) == std::get<2>(e))
            std::get<3>(m.back()) = std::get<3>(m.back()) + std::get<3>(e);
        else
            m.push_back(std::move(e));
    }
    m.erase(std::remove_if(m.begin(), m.end(),
                           [](const Triple& e) { return std::get<3>(e).is_zero(); }),
            m.end());
    w = std::move(m);
}

} // namespace

std::vector<std::tuple<int, int, int, ThetaScalar>> HopfAlgebra::delta2(int k) const {
    std::vector<Triple> out;
    for (const auto& t : comult[k])
        for (const auto& s : comult[t.a]) out.emplace_back(s.a, s.b, t.b, s.coeff * t.coeff);
    triple_normalize(out);
    return out;
}

namespace {

std::string power_label(const std::string& gen, int e) {
    if (e == 0) return "1";
    if (e == 1) return gen;
    return gen + "^" + std::to_string(e);
}

std::string pair_label(const std::string& g1, int e1, const std::string& g2, int e2) {
    if (e1 == 0) return power_label(g2, e2);
    if (e2 == 0) return power_label(g1, e1);
    return power_label(g1, e1) + "*" + power_label(g2, e2);
}

std::string idx_pair(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

} // namespace

HopfAlgebra build_H(std::shared_ptr<const ScalarContext> ctx) {
    const ScalarContext& C = *ctx;
    int p = C.p, n = C.n;
    HopfAlgebra h;
    h.ctx = ctx;
    h.name = "H_{" + std::to_string(p) + ",-1}";
    h.dim = 2 * n;
    h.basis_labels.resize(h.dim);
    for (int g = 0; g <= 1; ++g)
        for (int i = 0; i < n; ++i) h.basis_labels[ha_index(p, g, i)] = pair_label("b", g, "a", i);
    // (b^g a^i)(b^d a^j) = xi^{-id} b^{g+d} a^{i+j}, b^2 = 0
    h.mult.assign(h.dim, std::vector<SparseVec>(h.dim));
    for (int g = 0; g <= 1; ++g)
        for (int i = 0; i < n; ++i)
            for (int d = 0; d <= 1; ++d)
                for (int j = 0; j < n; ++j) {
                    if (g + d >= 2) continue;
                    h.mult[ha_index(p, g, i)][ha_index(p, d, j)] =
                        SparseVec{{ha_index(p, g + d, i + j), ctx->xi(-(long)i * d)}};
                }
    h.unit = {{ha_index(p, 0, 0), ctx->one()}};
    TensorVec da{{ha_index(p, 0, 1), ha_index(p, 0, 1), ctx->one()},
                 {ha_index(p, 1, 0), ha_index(p, 1, p), ThetaScalar(C.lambda_inv)}};
    TensorVec db{{ha_index(p, 1, 0), ha_index(p, 0, p + 1), ctx->one()},
                 {ha_index(p, 0, 1), ha_index(p, 1, 0), ctx->one()}};
    std::vector<TensorVec> da_pow(n);
    da_pow[0] = {{ha_index(p, 0, 0), ha_index(p, 0, 0), ctx->one()}};
    for (int i = 1; i < n; ++i) da_pow[i] = h.tensor_mul(da_pow[i - 1], da);
    h.comult.resize(h.dim);
    for (int i = 0; i < n; ++i) {
        h.comult[ha_index(p, 0, i)] = da_pow[i];
        h.comult[ha_index(p, 1, i)] = h.tensor_mul(db, da_pow[i]);
    }
    h.counit.assign(h.dim, ThetaScalar());
    for (int i = 0; i < n; ++i) h.counit[ha_index(p, 0, i)] = ctx->one();
    // S(a) = a^{2p-1}, S(b) = xi^{p+1} b a^{p-2}, extended anti-multiplicatively
    h.antipode = SparseMatrix(h.dim, h.dim);
    SparseVec Sb{{ha_index(p, 1, p - 2), ctx->xi(p + 1)}};
    for (int i = 0; i < n; ++i) {
        SparseVec Sa_i{{ha_index(p, 0, (n - i) % n), ctx->one()}};
        h.antipode.add(ha_index(p, 0, (n - i) % n), ha_index(p, 0, i), ctx->one());
        SparseVec v = h.mul(Sa_i, Sb);  // S(b a^i) = S(a^i) S(b)
        for (const auto& [r, c] : v) h.antipode.add(r, ha_index(p, 1, i), c);
    }
    auto inv = inverse(h.antipode);
    if (!inv) throw AntipodeNotFound("H antipode not invertible");
    h.antipode_inv = *inv;
    return h;
}

namespace {

// shared skeleton for A_{p,-1} (x^2 = 1 - g^2) and gr A (x^2 = 0)
HopfAlgebra build_A_like(std::shared_ptr<const ScalarContext> ctx, bool x_square_zero) {
    const ScalarContext& C = *ctx;
    int p = C.p, n = C.n;
    (void)C;
    HopfAlgebra h;
    h.ctx = ctx;
    h.name = x_square_zero ? "grA_{" + std::to_string(p) + ",-1}"
                           : "A_{" + std::to_string(p) + ",-1}";
    h.dim = 2 * n;
    h.basis_labels.resize(h.dim);
    for (int d = 0; d <= 1; ++d)
        for (int i = 0; i < n; ++i) h.basis_labels[ha_index(p, d, i)] = pair_label("x", d, "g", i);
    h.mult.assign(h.dim, std::vector<SparseVec>(h.dim));
    for (int d = 0; d <= 1; ++d)
        for (int i = 0; i < n; ++i)
            for (int e = 0; e <= 1; ++e)
                for (int j = 0; j < n; ++j) {
                    // (x^d g^i)(x^e g^j) = (-1)^{ie} x^{d+e} g^{i+j}
                    ThetaScalar sgn = ctx->scalar((i * e) % 2 == 0 ? 1 : -1);
                    SparseVec v;
                    if (d + e < 2) {
                        v = {{ha_index(p, d + e, i + j), sgn}};
                    } else if (!x_square_zero) {
                        v = sv_normalize(SparseVec{{ha_index(p, 0, i + j), sgn},
                                                   {ha_index(p, 0, i + j + 2), -sgn}});
                    }
                    h.mult[ha_index(p, d, i)][ha_index(p, e, j)] = std::move(v);
                }
    h.unit = {{ha_index(p, 0, 0), ctx->one()}};
    h.comult.resize(h.dim);
    for (int i = 0; i < n; ++i) {
        h.comult[ha_index(p, 0, i)] = {{ha_index(p, 0, i), ha_index(p, 0, i), ctx->one()}};
        // Delta(x g^i) = x g^i (x) g^i + g^{i+1} (x) x g^i
        h.comult[ha_index(p, 1, i)] =
            tv_normalize({{ha_index(p, 1, i), ha_index(p, 0, i), ctx->one()},
                          {ha_index(p, 0, i + 1), ha_index(p, 1, i), ctx->one()}});
    }
    h.counit.assign(h.dim, ThetaScalar());
    for (int i = 0; i < n; ++i) h.counit[ha_index(p, 0, i)] = ctx->one();
    // S(g^i) = g^{-i}; S(x g^i) = (-1)^i x g^{-i-1}
    h.antipode = SparseMatrix(h.dim, h.dim);
    for (int i = 0; i < n; ++i) {
        h.antipode.add(ha_index(p, 0, (n - i) % n), ha_index(p, 0, i), ctx->one());
        h.antipode.add(ha_index(p, 1, (2 * n - i - 1) % n), ha_index(p, 1, i),
                       ctx->scalar(i % 2 == 0 ? 1 : -1));
    }
    auto inv = inverse(h.antipode);
    if (!inv) throw AntipodeNotFound("A antipode not invertible");
    h.antipode_inv = *inv;
    return h;
}

} // namespace

HopfAlgebra build_A(std::shared_ptr<const ScalarContext> ctx) { return build_A_like(ctx, false); }
HopfAlgebra build_grA(std::shared_ptr<const ScalarContext> ctx) { return build_A_like(ctx, true); }

HopfReport verify_hopf(const HopfAlgebra& h) {
    HopfReport rep;
    const ScalarContext& C = *h.ctx;
    auto add = [&rep](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, pass ? "" : detail});
    };

    // unit laws
    {
        bool ok = true;
        std::string det;
        for (int i = 0; i < h.dim && ok; ++i) {
            SparseVec e{{i, C.one()}};
            if (h.mul(h.unit, e) != e || h.mul(e, h.unit) != e) {
                ok = false;
                det = "basis " + std::to_string(i);
            }
        }
        add("unit", ok, det);
    }
    // associativity
    {
        std::vector<char> okv(h.dim, 1);
        std::mutex mx;
        std::string det;
        parallel_for((size_t)h.dim, [&](size_t i) {
            for (int j = 0; j < h.dim; ++j) {
                const SparseVec& ij = h.mult[i][j];
                for (int k = 0; k < h.dim; ++k) {
                    SparseVec lhs;
                    for (const auto& [t, c] : ij) lhs = sv_axpy(lhs, c, h.mult[t][k]);
                    SparseVec rhs;
                    for (const auto& [t, c] : h.mult[j][k]) rhs = sv_axpy(rhs, c, h.mult[i][t]);
                    if (lhs != rhs) {
                        okv[i] = 0;
                        std::lock_guard<std::mutex> g(mx);
                        if (det.empty())
                            det = "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")";
                        return;
                    }
                }
            }
        }, 1);
        bool ok = std::all_of(okv.begin(), okv.end(), [](char c) { return c != 0; });
        add("associativity", ok, det);
    }
    // counit laws
    {
        bool ok = true;
        std::string det;
        for (int k = 0; k < h.dim && ok; ++k) {
            SparseVec left, right;
            for (const auto& t : h.comult[k]) {
                left = sv_axpy(left, t.coeff * h.counit[t.a], SparseVec{{t.b, C.one()}});
                right = sv_axpy(right, t.coeff * h.counit[t.b], SparseVec{{t.a, C.one()}});
            }
            SparseVec e{{k, C.one()}};
            if (left != e || right != e) {
                ok = false;
                det = "basis " + std::to_string(k);
            }
        }
        add("counit", ok, det);
    }
    // coassociativity
    {
        bool ok = true;
        std::string det;
        for (int k = 0; k < h.dim && ok; ++k) {
            auto lhs = h.delta2(k);
            std::vector<Triple> rhs;
            for (const auto& t : h.comult[k])
                for (const auto& s : h.comult[t.b]) rhs.emplace_back(t.a, s.a, s.b, t.coeff * s.coeff);
            triple_normalize(rhs);
            if (lhs != rhs) {
                ok = false;
                det = "basis " + std::to_string(k);
            }
        }
        add("coassociativity", ok, det);
    }
    // Delta multiplicative
    {
        std::vector<char> okv(h.dim, 1);
        std::mutex mx;
        std::string det;
        parallel_for((size_t)h.dim, [&](size_t i) {
            for (int j = 0; j < h.dim; ++j) {
                TensorVec lhs = h.delta(h.mult[i][j]);
                TensorVec rhs = h.tensor_mul(h.comult[i], h.comult[j]);
                if (!tv_equal(lhs, rhs)) {
                    okv[i] = 0;
                    std::lock_guard<std::mutex> g(mx);
                    if (det.empty()) det = idx_pair((int)i, j);
                    return;
                }
            }
        }, 1);
        bool ok = std::all_of(okv.begin(), okv.end(), [](char c) { return c != 0; });
        if (ok) {
            TensorVec one;
            for (const auto& [i, ci] : h.unit)
                for (const auto& [j, cj] : h.unit) one.push_back({i, j, ci * cj});
            if (!tv_equal(h.delta(h.unit), one)) {
                ok = false;
                det = "Delta(1)";
            }
        }
        add("comult multiplicative", ok, det);
    }
    // counit multiplicative
    {
        bool ok = h.eps(h.unit).is_one();
        std::string det = ok ? "" : "eps(1)";
        for (int i = 0; i < h.dim && ok; ++i)
            for (int j = 0; j < h.dim; ++j) {
                if (h.eps(h.mult[i][j]) != h.counit[i] * h.counit[j]) {
                    ok = false;
                    det = idx_pair(i, j);
                    break;
                }
            }
        add("counit multiplicative", ok, det);
    }
    // antipode convolution identity, both sides
    {
        bool ok = true;
        std::string det;
        for (int k = 0; k < h.dim && ok; ++k) {
            SparseVec left, right;
            for (const auto& t : h.comult[k]) {
                left = sv_axpy(left, t.coeff,
                               h.mul(h.S(SparseVec{{t.a, C.one()}}), SparseVec{{t.b, C.one()}}));
                right = sv_axpy(right, t.coeff,
                                h.mul(SparseVec{{t.a, C.one()}}, h.S(SparseVec{{t.b, C.one()}})));
            }
            SparseVec want = sv_scale(h.unit, h.counit[k]);
            if (left != want || right != want) {
                ok = false;
                det = "basis " + std::to_string(k);
            }
        }
        add("antipode", ok, det);
    }
    // antipode inverse
    {
        SparseMatrix id = SparseMatrix::identity(h.dim, C, h.dim);
        bool ok = (h.antipode_inv * h.antipode == id) && (h.antipode * h.antipode_inv == id);
        add("antipode inverse", ok, ok ? "" : "S_inv * S != id");
    }
    return rep;
}

int antipode_order(const HopfAlgebra& h, int cap) {
    SparseMatrix id = SparseMatrix::identity(h.dim, *h.ctx, h.dim);
    SparseMatrix acc = h.antipode;
    for (int k = 1; k <= cap; ++k) {
        if (acc == id) return k;
        acc = acc * h.antipode;
    }
    return 0;
}

HopfAlgebra dual(const HopfAlgebra& h) {
    HopfAlgebra d;
    d.ctx = h.ctx;
    d.name = h.name + "^*";
    d.dim = h.dim;
    d.basis_labels.resize(h.dim);
    for (int i = 0; i < h.dim; ++i) d.basis_labels[i] = "(" + h.basis_labels[i] + ")*";
    d.mult.assign(h.dim, std::vector<SparseVec>(h.dim));
    for (int k = 0; k < h.dim; ++k)
        for (const auto& t : h.comult[k]) d.mult[t.a][t.b].emplace_back(k, t.coeff);
    for (auto& row : d.mult)
        for (auto& v : row) v = sv_normalize(std::move(v));
    d.unit.clear();
    for (int k = 0; k < h.dim; ++k)
        if (!h.counit[k].is_zero()) d.unit.emplace_back(k, h.counit[k]);
    d.comult.resize(h.dim);
    for (int i = 0; i < h.dim; ++i)
        for (int j = 0; j < h.dim; ++j)
            for (const auto& [k, c] : h.mult[i][j]) d.comult[k].push_back({i, j, c});
    for (auto& t : d.comult) t = tv_normalize(std::move(t));
    d.counit.assign(h.dim, ThetaScalar());
    for (const auto& [k, c] : h.unit) d.counit[k] = c;
    d.antipode = h.antipode.transposed();
    d.antipode_inv = h.antipode_inv.transposed();
    return d;
}

bool HopfMorphism::is_algebra_map(std::string* fail) const {
    const HopfAlgebra& A = *source;
    const HopfAlgebra& B = *target;
    if (matrix.apply(A.unit) != B.unit) {
        if (fail) *fail = "unit";
        return false;
    }
    for (int i = 0; i < A.dim; ++i) {
        SparseVec fi = matrix.apply(SparseVec{{i, A.ctx->one()}});
        for (int j = 0; j < A.dim; ++j) {
            SparseVec fj = matrix.apply(SparseVec{{j, A.ctx->one()}});
            if (matrix.apply(A.mult[i][j]) != B.mul(fi, fj)) {
                if (fail) *fail = "product " + idx_pair(i, j);
                return false;
            }
        }
    }
    return true;
}

bool HopfMorphism::is_coalgebra_map(std::string* fail) const {
    const HopfAlgebra& A = *source;
    const HopfAlgebra& B = *target;
    for (int k = 0; k < A.dim; ++k) {
        SparseVec fk = matrix.apply(SparseVec{{k, A.ctx->one()}});
        TensorVec lhs = B.delta(fk);
        TensorVec rhs;
        for (const auto& t : A.comult[k]) {
            SparseVec fa = matrix.apply(SparseVec{{t.a, A.ctx->one()}});
            SparseVec fb = matrix.apply(SparseVec{{t.b, A.ctx->one()}});
            for (const auto& [x, cx] : fa)
                for (const auto& [y, cy] : fb) rhs.push_back({x, y, t.coeff * cx * cy});
        }
        if (!tv_equal(lhs, rhs)) {
            if (fail) *fail = "comult at basis " + std::to_string(k);
            return false;
        }
        if (B.eps(fk) != A.counit[k]) {
            if (fail) *fail = "counit at basis " + std::to_string(k);
            return false;
        }
    }
    return true;
}

bool HopfMorphism::is_bijective() const { return rank(matrix) == source->dim; }

DualIsoResult dual_iso_check(std::shared_ptr<const ScalarContext> ctx, bool must_pass) {
    const ScalarContext& C = *ctx;
    int p = C.p, n = C.n;
    DualIsoResult res;
    res.A = build_A(ctx);
    HopfAlgebra H = build_H(ctx);
    res.Hdual = dual(H);
    res.phi = SparseMatrix(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            res.phi.add(ha_index(p, 0, j), ha_index(p, 0, i), ctx->xi(-(long)i * j));
        // phi(x g^i) = (-1)^i phi(g^i x) = (-1)^i theta sum_j xi^{-i(j+1)} (b a^j)^*
        for (int j = 0; j < n; ++j) {
            ThetaScalar c = ctx->theta(1) * ctx->xi(-(long)i * (j + 1)) *
                            ctx->scalar(i % 2 == 0 ? 1 : -1);
            res.phi.add(ha_index(p, 1, j), ha_index(p, 1, i), c);
        }
    }
    HopfMorphism m{&res.A, &res.Hdual, res.phi};
    std::string why;
    if (!m.is_bijective())
        res.detail = "phi not bijective";
    else if (!m.is_algebra_map(&why))
        res.detail = "not an algebra map: " + why;
    else if (!m.is_coalgebra_map(&why))
        res.detail = "not a coalgebra map: " + why;
    else
        res.ok = true;
    if (!res.ok && must_pass) throw IsoCheckFailed(res.detail);
    return res;
}

SparseVec DrinfeldDouble::embed_A(const SparseVec& alpha) const {
    SparseVec out;
    for (const auto& [i, c] : alpha) out.emplace_back(index(i, 0), c);
    return sv_normalize(std::move(out));
}

SparseVec DrinfeldDouble::embed_H(const SparseVec& h) const {
    SparseVec out;
    for (const auto& [i, c] : h) out.emplace_back(index(0, i), c);
    return sv_normalize(std::move(out));
}

DrinfeldDouble drinfeld_double(std::shared_ptr<const ScalarContext> ctx, int cap) {
    const ScalarContext& C = *ctx;
    int p = C.p, n = C.n;
    HopfAlgebra A = build_A(ctx);
    HopfAlgebra H = build_H(ctx);
    int dimD = A.dim * H.dim;
    if (dimD > cap)
        throw CapExceeded("Drinfeld double dimension " + std::to_string(dimD) + " exceeds cap");
    DrinfeldDouble dd;
    dd.dimA = A.dim;
    dd.dimH = H.dim;
    HopfAlgebra& D = dd.D;
    D.ctx = ctx;
    D.name = "D(H_{" + std::to_string(p) + ",-1}^cop)";
    D.dim = dimD;
    D.basis_labels.resize(dimD);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < H.dim; ++j)
            D.basis_labels[dd.index(i, j)] = A.basis_labels[i] + " (x) " + H.basis_labels[j];

    // pairing via Lemma 3.3's phi: <g^i, a^j> = xi^{-ij},
    // <x g^i, b a^j> = (-1)^i theta xi^{-i(j+1)}, zero across blocks
    std::vector<std::vector<ThetaScalar>> P(A.dim, std::vector<ThetaScalar>(H.dim));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            P[ha_index(p, 0, i)][ha_index(p, 0, j)] = ctx->xi(-(long)i * j);
            P[ha_index(p, 1, i)][ha_index(p, 1, j)] =
                ctx->theta(1) * ctx->xi(-(long)i * (j + 1)) * ctx->scalar(i % 2 == 0 ? 1 : -1);
        }
    auto pair_vec = [&](int alpha, const SparseVec& hv) {
        ThetaScalar acc;
        for (const auto& [t, c] : hv) acc = acc + c * P[alpha][t];
        return acc;
    };

    std::vector<std::vector<Triple>> d2A(A.dim), d2H(H.dim);
    for (int k = 0; k < A.dim; ++k) d2A[k] = A.delta2(k);
    for (int k = 0; k < H.dim; ++k) d2H[k] = H.delta2(k);
    std::vector<SparseVec> SH(H.dim);
    for (int k = 0; k < H.dim; ++k) SH[k] = H.S(SparseVec{{k, C.one()}});

    // (alpha (x) h)(beta (x) k) =
    //   sum <beta1, S_H(h1)> <beta3, h3> (beta2 *_A alpha) (x) (h2 *_H k)
    D.mult.assign(dimD, std::vector<SparseVec>(dimD));
    parallel_for((size_t)A.dim, [&](size_t ai) {
        for (int hi = 0; hi < H.dim; ++hi) {
            int row = dd.index((int)ai, hi);
            for (int bi = 0; bi < A.dim; ++bi)
                for (int ki = 0; ki < H.dim; ++ki) {
                    SparseVec acc;
                    for (const auto& [h1, h2, h3, ch] : d2H[hi]) {
                        for (const auto& [b1, b2, b3, cb] : d2A[bi]) {
                            if (P[b3][h3].is_zero()) continue;
                            ThetaScalar f = ch * cb * pair_vec(b1, SH[h1]) * P[b3][h3];
                            if (f.is_zero()) continue;
                            const SparseVec& am = A.mult[b2][ai];
                            const SparseVec& hm = H.mult[h2][ki];
                            for (const auto& [x, cx] : am)
                                for (const auto& [y, cy] : hm)
                                    acc.emplace_back(dd.index(x, y), f * cx * cy);
                        }
                    }
                    D.mult[row][dd.index(bi, ki)] = sv_normalize(std::move(acc));
                }
        }
    }, 1);
    D.unit = {{dd.index(ha_index(p, 0, 0), ha_index(p, 0, 0)), C.one()}};
    // tensor coalgebra of A^bop (x) H^cop: both legs flipped
    D.comult.resize(dimD);
    for (int ai = 0; ai < A.dim; ++ai)
        for (int hi = 0; hi < H.dim; ++hi) {
            TensorVec t;
            for (const auto& ta : A.comult[ai])
                for (const auto& th : H.comult[hi])
                    t.push_back({dd.index(ta.b, th.b), dd.index(ta.a, th.a), ta.coeff * th.coeff});
            D.comult[dd.index(ai, hi)] = tv_normalize(std::move(t));
        }
    D.counit.assign(dimD, ThetaScalar());
    for (int ai = 0; ai < A.dim; ++ai)
        for (int hi = 0; hi < H.dim; ++hi) D.counit[dd.index(ai, hi)] = A.counit[ai] * H.counit[hi];
    // S is S_A on the embedded A^bop and S_H^{-1} on the embedded H^cop
    D.antipode = SparseMatrix(dimD, dimD, dimD);
    for (int ai = 0; ai < A.dim; ++ai) {
        SparseVec sa = dd.embed_A(A.antipode.apply(SparseVec{{ai, C.one()}}));
        for (int hi = 0; hi < H.dim; ++hi) {
            SparseVec sh = dd.embed_H(H.antipode_inv.apply(SparseVec{{hi, C.one()}}));
            SparseVec img = D.mul(sh, sa);
            for (const auto& [r, c] : img) D.antipode.add(r, dd.index(ai, hi), c);
        }
    }
    for (int k = 0; k < dimD; ++k) {
        SparseVec left;
        for (const auto& t : D.comult[k])
            left = sv_axpy(left, t.coeff,
                           D.mul(D.antipode.apply(SparseVec{{t.a, C.one()}}),
                                 SparseVec{{t.b, C.one()}}));
        if (left != sv_scale(D.unit, D.counit[k]))
            throw AntipodeNotFound("double antipode fails at basis " + std::to_string(k));
    }
    auto inv = inverse(D.antipode);
    if (!inv) throw AntipodeNotFound("double antipode not invertible");
    D.antipode_inv = *inv;

    dd.gen_a = dd.embed_H(SparseVec{{ha_index(p, 0, 1), C.one()}});
    dd.gen_b = dd.embed_H(SparseVec{{ha_index(p, 1, 0), C.one()}});
    dd.gen_g = dd.embed_A(SparseVec{{ha_index(p, 0, 1), C.one()}});
    dd.gen_x = dd.embed_A(SparseVec{{ha_index(p, 1, 0), C.one()}});
    return dd;
}

namespace {

ThetaScalar tv_coeff(const TensorVec& t, int a, int b) {
    for (const auto& e : t)
        if (e.a == a && e.b == b) return e.coeff;
    return ThetaScalar();
}

bool is_group_like(const HopfAlgebra& h, const SparseVec& v) {
    if (v.empty()) return false;
    TensorVec vv;
    for (const auto& [i, ci] : v)
        for (const auto& [j, cj] : v) vv.push_back({i, j, ci * cj});
    return tv_equal(h.delta(v), vv) && h.eps(v).is_one();
}

} // namespace

std::vector<SparseVec> group_likes(const HopfAlgebra& h) {
    const ScalarContext& C = *h.ctx;
    std::vector<SparseVec> found;
    auto push_unique = [&](SparseVec v) {
        for (const auto& u : found)
            if (u == v) return;
        found.push_back(std::move(v));
    };
    for (int k = 0; k < h.dim; ++k) {
        SparseVec v{{k, C.one()}};
        if (is_group_like(h, v)) push_unique(std::move(v));
    }
    // two-element supports e_u + c e_w
    for (int u = 0; u < h.dim; ++u) {
        const TensorVec& du = h.comult[u];
        for (int w = 0; w < h.dim; ++w) {
            if (w == u) continue;
            const TensorVec& dw = h.comult[w];
            std::vector<ThetaScalar> candidates;
            auto consider = [&](const ThetaScalar& c) {
                if (c.is_zero()) return;
                for (const auto& e : candidates)
                    if (e == c) return;
                candidates.push_back(c);
            };
            for (const auto& e : dw) {
                bool special = (e.a == u || e.a == w) && (e.b == u || e.b == w);
                if (special) continue;
                if (theta_invertible(e.coeff)) consider(-(tv_coeff(du, e.a, e.b) / e.coeff));
            }
            {
                ThetaScalar B = tv_coeff(dw, u, w) - C.one();
                if (theta_invertible(B)) consider(-(tv_coeff(du, u, w) / B));
                ThetaScalar B2 = tv_coeff(dw, u, u);
                if (theta_invertible(B2)) consider((C.one() - tv_coeff(du, u, u)) / B2);
            }
            for (const auto& c : candidates) {
                SparseVec v = sv_normalize({{u, C.one()}, {w, c}});
                if (is_group_like(h, v)) push_unique(std::move(v));
            }
        }
    }
    // convolution blocks with a cyclic group law -> characters
    {
        std::map<std::pair<int, int>, int> op;
        std::set<int> blocked, members;
        for (int k = 0; k < h.dim; ++k) {
            bool unit_coeffs = !h.comult[k].empty();
            for (const auto& t : h.comult[k])
                if (!t.coeff.is_one()) unit_coeffs = false;
            if (!unit_coeffs) continue;
            for (const auto& t : h.comult[k]) {
                auto key = std::make_pair(t.a, t.b);
                auto it = op.find(key);
                if (it != op.end() && it->second != k) blocked.insert(k);
                op[key] = k;
                members.insert(k);
            }
        }
        std::set<int> S;
        for (int m : members)
            if (!blocked.count(m)) S.insert(m);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int u : std::vector<int>(S.begin(), S.end())) {
                bool ok = true;
                for (int v : S) {
                    auto it = op.find({u, v});
                    if (it == op.end() || !S.count(it->second)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) {
                    S.erase(u);
                    changed = true;
                    break;
                }
            }
        }
        if (S.size() >= 2) {
            for (int g : std::vector<int>(S.begin(), S.end())) {
                std::vector<int> orbit{g};
                int cur = g;
                while (true) {
                    auto it = op.find({cur, g});
                    if (it == op.end()) break;
                    cur = it->second;
                    if (cur == g) break;
                    orbit.push_back(cur);
                    if (orbit.size() > S.size()) break;
                }
                if (orbit.size() != S.size()) continue;
                int m = (int)orbit.size();
                if ((2 * C.p) % m != 0) continue;  // characters need m-th roots of unity
                for (int t = 0; t < m; ++t) {
                    SparseVec v;
                    for (int k = 0; k < m; ++k)
                        v.emplace_back(orbit[(size_t)k], C.xi((long)t * k * (2 * C.p / m)));
                    v = sv_normalize(std::move(v));
                    if (is_group_like(h, v)) push_unique(std::move(v));
                }
                break;
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const SparseVec& a, const SparseVec& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i].first != b[i].first) return a[i].first < b[i].first;
        return false;
    });
    return found;
}

std::vector<SparseVec> skew_primitives(const HopfAlgebra& h, const SparseVec& g1,
                                       const SparseVec& g2) {
    const ScalarContext& C = *h.ctx;
    int d = h.dim;
    SparseMatrix M(d * d, d, d * d);
    for (int v = 0; v < d; ++v) {
        for (const auto& t : h.comult[v]) M.add(t.a * d + t.b, v, t.coeff);
        for (const auto& [t, c] : g1) M.add(v * d + t, v, -c);
        for (const auto& [s, c] : g2) M.add(s * d + v, v, -c);
    }
    return kernel_basis(M, C).vectors;
}

HopfAlgebra bosonization(const BraidedHopf& r, const HopfAlgebra& h) {
    const ScalarContext& C = *h.ctx;
    // ---- Yetter-Drinfeld validation ----
    {
        SparseMatrix act1(r.dim, r.dim, r.dim);
        for (const auto& [k, c] : h.unit) act1 = act1 + r.action[k].scaled(c);
        if (!(act1 == SparseMatrix::identity(r.dim, C, r.dim)))
            throw YDViolation("unit does not act as identity");
        for (int i = 0; i < h.dim; ++i)
            for (int j = 0; j < h.dim; ++j) {
                SparseMatrix lhs(r.dim, r.dim, r.dim);
                for (const auto& [k, c] : h.mult[i][j]) lhs = lhs + r.action[k].scaled(c);
                if (!(lhs == r.action[i] * r.action[j]))
                    throw YDViolation("action not multiplicative at " + idx_pair(i, j));
            }
    }
    for (int v = 0; v < r.dim; ++v) {
        SparseVec back;
        for (const auto& t : r.coaction[v])
            back = sv_axpy(back, t.coeff * h.counit[t.a], SparseVec{{t.b, C.one()}});
        if (back != SparseVec{{v, C.one()}}) throw YDViolation("counit coaction law fails");
        std::vector<Triple> lhs, rhs;
        for (const auto& t : r.coaction[v])
            for (const auto& s : h.comult[t.a]) lhs.emplace_back(s.a, s.b, t.b, s.coeff * t.coeff);
        for (const auto& t : r.coaction[v])
            for (const auto& s : r.coaction[t.b]) rhs.emplace_back(t.a, s.a, s.b, t.coeff * s.coeff);
        triple_normalize(lhs);
        triple_normalize(rhs);
        if (lhs != rhs) throw YDViolation("coaction not coassociative");
    }
    for (int t = 0; t < h.dim; ++t) {
        auto d2 = h.delta2(t);
        for (int v = 0; v < r.dim; ++v) {
            TensorVec lhs;
            for (int rr = 0; rr < r.dim; ++rr) {
                ThetaScalar c = r.action[t].get(rr, v);
                if (c.is_zero()) continue;
                for (const auto& s : r.coaction[rr]) lhs.push_back({s.a, s.b, c * s.coeff});
            }
            TensorVec rhs;
            for (const auto& [t1, t2, t3, ct] : d2) {
                SparseVec st3 = h.S(SparseVec{{t3, C.one()}});
                for (const auto& s : r.coaction[v]) {
                    SparseVec hpart =
                        h.mul(h.mul(SparseVec{{t1, C.one()}}, SparseVec{{s.a, C.one()}}), st3);
                    for (int rr = 0; rr < r.dim; ++rr) {
                        ThetaScalar c = r.action[t2].get(rr, s.b);
                        if (c.is_zero()) continue;
                        for (const auto& [hh, chh] : hpart)
                            rhs.push_back({hh, rr, ct * s.coeff * c * chh});
                    }
                }
            }
            if (!tv_equal(lhs, rhs))
                throw YDViolation("YD compatibility fails at h-basis " + std::to_string(t) +
                                  ", module basis " + std::to_string(v));
        }
    }

    // ---- smash product / smash coproduct ----
    HopfAlgebra out;
    out.ctx = h.ctx;
    out.name = "B#" + h.name;
    out.dim = r.dim * h.dim;
    auto idx = [&](int ri, int hi) { return ri * h.dim + hi; };
    out.basis_labels.resize(out.dim);
    for (int i = 0; i < r.dim; ++i)
        for (int j = 0; j < h.dim; ++j)
            out.basis_labels[idx(i, j)] = r.labels[i] + " # " + h.basis_labels[j];
    out.mult.assign(out.dim, std::vector<SparseVec>(out.dim));
    parallel_for((size_t)r.dim, [&](size_t ri) {
        for (int hj = 0; hj < h.dim; ++hj)
            for (int sk = 0; sk < r.dim; ++sk)
                for (int hl = 0; hl < h.dim; ++hl) {
                    SparseVec acc;
                    for (const auto& t : h.comult[hj]) {
                        for (int s2 = 0; s2 < r.dim; ++s2) {
                            ThetaScalar ca = r.action[t.a].get(s2, sk);
                            if (ca.is_zero()) continue;
                            const SparseVec& rm = r.mult[ri][s2];
                            const SparseVec& hm = h.mult[t.b][hl];
                            for (const auto& [x, cx] : rm)
                                for (const auto& [y, cy] : hm)
                                    acc.emplace_back(idx(x, y), t.coeff * ca * cx * cy);
                        }
                    }
                    out.mult[idx((int)ri, hj)][idx(sk, hl)] = sv_normalize(std::move(acc));
                }
    }, 1);
    out.unit.clear();
    for (const auto& [i, ci] : r.unit)
        for (const auto& [j, cj] : h.unit) out.unit.emplace_back(idx(i, j), ci * cj);
    out.unit = sv_normalize(std::move(out.unit));
    out.comult.resize(out.dim);
    for (int ri = 0; ri < r.dim; ++ri)
        for (int hj = 0; hj < h.dim; ++hj) {
            TensorVec acc;
            for (const auto& tr : r.comult[ri])
                for (const auto& tc : r.coaction[tr.b])
                    for (const auto& th : h.comult[hj]) {
                        const SparseVec& hh = h.mult[tc.a][th.a];
                        for (const auto& [y, cy] : hh)
                            acc.push_back({idx(tr.a, y), idx(tc.b, th.b),
                                           tr.coeff * tc.coeff * th.coeff * cy});
                    }
            out.comult[idx(ri, hj)] = tv_normalize(std::move(acc));
        }
    out.counit.assign(out.dim, ThetaScalar());
    for (int ri = 0; ri < r.dim; ++ri)
        for (int hj = 0; hj < h.dim; ++hj) out.counit[idx(ri, hj)] = r.counit[ri] * h.counit[hj];

    // antipode from generators: S(1#h) = 1#S_H(h);
    // S(v#1) = -sum (1#S_H(v_-1)) (v_0#1) for degree-one v
    auto embed_h = [&](const SparseVec& hv) {
        SparseVec o;
        SparseVec runit = r.unit;
        for (const auto& [i, ci] : runit)
            for (const auto& [y, cy] : hv) o.emplace_back(idx(i, y), ci * cy);
        return sv_normalize(std::move(o));
    };
    auto embed_r = [&](int ri) {
        SparseVec o;
        for (const auto& [j, cj] : h.unit) o.emplace_back(idx(ri, j), cj);
        return sv_normalize(std::move(o));
    };
    std::map<int, SparseVec> s_gen;  // generator id -> S(gen#1)
    for (int ri = 0; ri < r.dim; ++ri) {
        if (r.words[ri].size() != 1) continue;
        SparseVec acc;
        for (const auto& t : r.coaction[ri]) {
            SparseVec left = embed_h(h.S(SparseVec{{t.a, C.one()}}));
            acc = sv_axpy(acc, -t.coeff, out.mul(left, embed_r(t.b)));
        }
        s_gen[r.words[ri][0]] = std::move(acc);
    }
    std::vector<SparseVec> s_r1(r.dim);
    for (int ri = 0; ri < r.dim; ++ri) {
        const auto& w = r.words[ri];
        SparseVec acc = out.unit;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            auto f = s_gen.find(*it);
            if (f == s_gen.end()) throw AntipodeNotFound("missing degree-one generator word");
            acc = out.mul(acc, f->second);
        }
        s_r1[ri] = std::move(acc);
    }
    out.antipode = SparseMatrix(out.dim, out.dim, out.dim);
    for (int ri = 0; ri < r.dim; ++ri)
        for (int hj = 0; hj < h.dim; ++hj) {
            SparseVec img = out.mul(embed_h(h.S(SparseVec{{hj, C.one()}})), s_r1[ri]);
            for (const auto& [t, c] : img) out.antipode.add(t, idx(ri, hj), c);
        }
    for (int k = 0; k < out.dim; ++k) {
        SparseVec left;
        for (const auto& t : out.comult[k])
            left = sv_axpy(left, t.coeff,
                           out.mul(out.antipode.apply(SparseVec{{t.a, C.one()}}),
                                   SparseVec{{t.b, C.one()}}));
        if (left != sv_scale(out.unit, out.counit[k]))
            throw AntipodeNotFound("bosonization antipode fails at basis " + std::to_string(k));
    }
    auto inv = inverse(out.antipode);
    if (!inv) throw AntipodeNotFound("bosonization antipode not invertible");
    out.antipode_inv = *inv;
    return out;
}

std::string hopf_to_json(const HopfAlgebra& h) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["name"] = h.name;
    j["p"] = h.ctx->p;
    j["dim"] = h.dim;
    j["basis"] = h.basis_labels;
    auto vec_json = [](const SparseVec& v) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& [i, c] : v) out.push_back({{"i", i}, {"c", to_string(c)}});
        return out;
    };
    nlohmann::ordered_json mult = nlohmann::ordered_json::array();
    for (int i = 0; i < h.dim; ++i)
        for (int k = 0; k < h.dim; ++k) {
            if (h.mult[i][k].empty()) continue;
            mult.push_back({{"i", i}, {"j", k}, {"v", vec_json(h.mult[i][k])}});
        }
    j["mult"] = std::move(mult);
    j["unit"] = vec_json(h.unit);
    nlohmann::ordered_json com = nlohmann::ordered_json::array();
    for (int k = 0; k < h.dim; ++k) {
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto& t : h.comult[k])
            terms.push_back({{"a", t.a}, {"b", t.b}, {"c", to_string(t.coeff)}});
        com.push_back(std::move(terms));
    }
    j["comult"] = std::move(com);
    nlohmann::ordered_json cu = nlohmann::ordered_json::array();
    for (const auto& c : h.counit) cu.push_back(to_string(c));
    j["counit"] = std::move(cu);
    nlohmann::ordered_json ant = nlohmann::ordered_json::array();
    for (int c = 0; c < h.dim; ++c)
        ant.push_back(vec_json(h.antipode.apply(SparseVec{{c, h.ctx->one()}})));
    j["antipode"] = std::move(ant);
    return j.dump(2);
}

} // namespace rad
