#include "radford/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace rad {

namespace {

using Poly = std::vector<Rat>;  // dense, poly[k] = coefficient of x^k

int pdeg(const Poly& f) {
    for (int k = (int)f.size() - 1; k >= 0; --k)
        if (f[k] != 0) return k;
    return -1;
}

void ptrim(Poly& f) { f.resize(pdeg(f) + 1); }

// exact division, remainder must vanish
Poly pdiv_exact(Poly num, const Poly& den) {
    int dn = pdeg(num), dd = pdeg(den);
    if (dd < 0) throw DivisionByZero("polynomial division by zero");
    Poly q(std::max(dn - dd + 1, 0), Rat(0));
    for (int k = dn; k >= dd; --k) {
        if (num[k] == 0) continue;
        Rat c = num[k] / den[dd];
        q[k - dd] = c;
        for (int j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
    }
    if (pdeg(num) >= 0) throw Error("inexact polynomial division while building Phi_n");
    return q;
}

Poly cyclotomic_poly(int n, std::map<int, Poly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly f(n + 1, Rat(0));
    f[0] = -1;
    f[n] = 1;  // x^n - 1
    for (int d = 1; d < n; ++d)
        if (n % d == 0) f = pdiv_exact(std::move(f), cyclotomic_poly(d, memo));
    ptrim(f);
    memo[n] = f;
    return f;
}

} // namespace

Cyclotomic::Cyclotomic(const ScalarContext* cx, std::vector<Rat> coeffs) : ctx(cx), c(std::move(coeffs)) {
    c.resize(ctx->deg, Rat(0));
    normalize();
}

void Cyclotomic::normalize() {
    for (const auto& v : c)
        if (v != 0) return;
    c.clear();
    ctx = nullptr;
}

bool Cyclotomic::is_one() const {
    if (c.empty()) return false;
    if (c[0] != 1) return false;
    for (size_t k = 1; k < c.size(); ++k)
        if (c[k] != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t k = 1; k < c.size(); ++k)
        if (c[k] != 0) return false;
    return true;
}

Rat Cyclotomic::rational_part() const { return c.empty() ? Rat(0) : c[0]; }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.c.empty() || b.c.empty()) return a.c.empty() && b.c.empty();
    return a.c == b.c;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Cyclotomic r = a;
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] += b.c[k];
    r.normalize();
    return r;
}

Cyclotomic operator-(const Cyclotomic& a) {
    Cyclotomic r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero() || b.is_zero()) return Cyclotomic();
    const ScalarContext* ctx = a.ctx;
    int d = ctx->deg;
    std::vector<Rat> conv(2 * d - 1, Rat(0));
    for (int i = 0; i < d; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b.c[j] == 0) continue;
            conv[i + j] += a.c[i] * b.c[j];
        }
    }
    // fold x^(d+k) via precomputed reductions
    std::vector<Rat> out(conv.begin(), conv.begin() + d);
    for (int k = d; k < 2 * d - 1; ++k) {
        if (conv[k] == 0) continue;
        const auto& red = ctx->xpow[k - d];
        for (int j = 0; j < d; ++j) out[j] += conv[k] * red[j];
    }
    return Cyclotomic(ctx, std::move(out));
}

Cyclotomic cyc_inv(const Cyclotomic& a) {
    if (a.is_zero()) throw DivisionByZero("inverse of zero in Q(zeta)");
    const ScalarContext* ctx = a.ctx;
    // extended Euclid on (phi, a) over Q[x]; phi irreducible so gcd = 1
    Poly r0 = ctx->phi;
    Poly r1(a.c.begin(), a.c.end());
    ptrim(r1);
    Poly s0{Rat(0)}, s1{Rat(1)};  // coefficients of `a` in the combination
    while (true) {
        int d1 = pdeg(r1);
        if (d1 == 0) break;
        if (d1 < 0) throw Error("cyclotomic inverse: gcd degenerated");
        // r0 = q*r1 + r2
        Poly rem = r0;
        int d0 = pdeg(rem);
        Poly q(std::max(d0 - d1 + 1, 0), Rat(0));
        for (int k = d0; k >= d1; --k) {
            if (rem[k] == 0) continue;
            Rat c = rem[k] / r1[d1];
            q[k - d1] = c;
            for (int j = 0; j <= d1; ++j) rem[k - d1 + j] -= c * r1[j];
        }
        ptrim(rem);
        // s2 = s0 - q*s1
        Poly s2 = s0;
        s2.resize(std::max(s2.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        ptrim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    Rat lead = r1[0];
    Poly inv = s1;
    for (auto& v : inv) v /= lead;
    inv.resize(ctx->deg, Rat(0));
    // s1 has degree < deg phi already (Euclid keeps cofactor degrees small)
    return Cyclotomic(ctx, std::move(inv));
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * cyc_inv(b); }

Cyclotomic cyc_pow(const Cyclotomic& a, long e) {
    if (e < 0) return cyc_pow(cyc_inv(a), -e);
    if (a.is_zero()) {
        if (e == 0) throw Error("0^0 in Q(zeta)");
        return Cyclotomic();
    }
    Cyclotomic acc = a.ctx->one_c(), base = a;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// ---- ThetaScalar ----

ThetaScalar operator+(const ThetaScalar& a, const ThetaScalar& b) {
    return ThetaScalar(a.re + b.re, a.th + b.th);
}
ThetaScalar operator-(const ThetaScalar& a, const ThetaScalar& b) {
    return ThetaScalar(a.re - b.re, a.th - b.th);
}
ThetaScalar operator-(const ThetaScalar& a) { return ThetaScalar(-a.re, -a.th); }

ThetaScalar operator*(const ThetaScalar& a, const ThetaScalar& b) {
    if (a.is_zero() || b.is_zero()) return ThetaScalar();
    const ScalarContext* ctx = a.context();
    Cyclotomic re = a.re * b.re;
    Cyclotomic cross = a.th * b.th;
    if (!cross.is_zero()) re = re + cross * ctx->theta_sq;
    Cyclotomic th = a.re * b.th + a.th * b.re;
    return ThetaScalar(std::move(re), std::move(th));
}

bool theta_invertible(const ThetaScalar& a) {
    if (a.is_zero()) return false;
    const ScalarContext* ctx = a.context();
    Cyclotomic norm = a.re * a.re - a.th * a.th * ctx->theta_sq;
    return !norm.is_zero();
}

ThetaScalar theta_inv(const ThetaScalar& a) {
    if (a.is_zero()) throw DivisionByZero();
    const ScalarContext* ctx = a.context();
    Cyclotomic norm = a.re * a.re - a.th * a.th * ctx->theta_sq;
    if (norm.is_zero()) throw DivisionByZeroDivisor();
    Cyclotomic ninv = cyc_inv(norm);
    return ThetaScalar(a.re * ninv, -(a.th * ninv));
}

ThetaScalar operator/(const ThetaScalar& a, const ThetaScalar& b) { return a * theta_inv(b); }

ThetaScalar theta_pow(const ThetaScalar& a, long e) {
    if (e < 0) return theta_pow(theta_inv(a), -e);
    if (a.is_zero()) {
        if (e == 0) throw Error("0^0");
        return ThetaScalar();
    }
    ThetaScalar acc = a.context()->one(), base = a;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

ThetaScalar theta_conj(const ThetaScalar& a) { return ThetaScalar(a.re, -a.th); }

// ---- context ----

Cyclotomic ScalarContext::one_c() const { return from_rat(Rat(1)); }

Cyclotomic ScalarContext::from_rat(const Rat& r) const {
    if (r == 0) return Cyclotomic();
    std::vector<Rat> c(deg, Rat(0));
    c[0] = r;
    Cyclotomic out;
    out.ctx = this;
    out.c = std::move(c);
    return out;
}

Cyclotomic ScalarContext::xi_pow(long k) const {
    long m = k % n;
    if (m < 0) m += n;
    return xi_powers[(size_t)m];
}

ThetaScalar ScalarContext::theta(long k) const {
    if (k >= 0) {
        // theta^k = c^(k/2) or c^((k-1)/2)*theta
        Cyclotomic even = cyc_pow(theta_sq, k / 2);
        if (k % 2 == 0) return ThetaScalar(even);
        return ThetaScalar(zero_c(), even);
    }
    return theta_inv(theta(-k));
}

std::shared_ptr<const ScalarContext> context_init(int p) {
    if (p < 2) throw UsageError("context_init requires p >= 2");
    auto ctx = std::make_shared<ScalarContext>();
    ScalarContext& C = const_cast<ScalarContext&>(*ctx);
    C.p = p;
    C.n = 2 * p;
    std::map<int, Poly> memo;
    Poly phi = cyclotomic_poly(C.n, memo);
    C.deg = pdeg(phi);
    C.phi = phi;
    // reduction table: x^deg = -(low part of phi); x^(deg+k) iteratively
    int d = C.deg;
    std::vector<Rat> xd(d, Rat(0));
    for (int j = 0; j < d; ++j) xd[j] = -phi[j];
    C.xpow.push_back(xd);
    for (int k = 1; k <= d - 2; ++k) {
        const auto& prev = C.xpow.back();
        std::vector<Rat> cur(d, Rat(0));
        // multiply prev by x, fold overflow through x^deg
        for (int j = 0; j < d - 1; ++j) cur[j + 1] = prev[j];
        if (prev[d - 1] != 0)
            for (int j = 0; j < d; ++j) cur[j] += prev[d - 1] * xd[j];
        C.xpow.push_back(std::move(cur));
    }
    // xi powers
    C.xi_powers.resize(C.n);
    C.xi_powers[0] = C.one_c();
    std::vector<Rat> xc(d, Rat(0));
    if (d == 1) {
        // impossible: phi(2p) = 1 only for 2p in {1,2}, excluded by p >= 2
        throw UsageError("degenerate cyclotomic degree");
    }
    xc[1] = 1;
    Cyclotomic xi;
    xi.ctx = ctx.get();
    xi.c = std::move(xc);
    for (int k = 1; k < C.n; ++k) C.xi_powers[k] = C.xi_powers[k - 1] * xi;
    // lambda = (xi-1)/(xi+1); p >= 2 keeps xi != +-1 so both parts are nonzero
    Cyclotomic one = C.one_c();
    C.lambda = (xi - one) / (xi + one);
    if (C.lambda.is_zero()) throw Error("lambda vanished; p out of range");
    C.lambda_inv = cyc_inv(C.lambda);
    C.theta_sq = (one - C.xi_pow(-2)) * C.lambda;
    if (C.theta_sq.is_zero()) throw Error("theta^2 vanished; p out of range");
    C.theta_sq_inv = cyc_inv(C.theta_sq);
    return ctx;
}

std::optional<int> order_of_unity(const ThetaScalar& s) {
    if (s.is_zero()) return std::nullopt;
    const ScalarContext* ctx = s.context();
    ThetaScalar acc = s;
    for (int k = 1; k <= 4 * ctx->p; ++k) {
        if (acc.is_one()) return k;
        acc = acc * s;
    }
    return std::nullopt;
}

std::optional<int> order_of_unity(const Cyclotomic& s) { return order_of_unity(ThetaScalar(s)); }

// ---- rendering ----

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_string(const Cyclotomic& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = (int)a.c.size() - 1; k >= 0; --k) {
        const Rat& v = a.c[k];
        if (v == 0) continue;
        Rat av = abs(v);
        if (first) {
            if (v < 0) os << "-";
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        os << av.get_str();
        if (k == 1)
            os << "*x";
        else if (k >= 2)
            os << "*x^" << k;
    }
    return os.str();
}

std::string to_string(const ThetaScalar& a) {
    if (a.th.is_zero()) return to_string(a.re);
    std::string th = "(" + to_string(a.th) + ")*t";
    if (a.re.is_zero()) return th;
    return to_string(a.re) + " + " + th;
}

// ---- parsing: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
//      factor := rational | 'x' ['^' int] | 't' ['^' int] | '(' expr ')' | '-' factor

namespace {

struct Parser {
    const ScalarContext& ctx;
    const std::string& s;
    size_t i = 0;

    explicit Parser(const ScalarContext& c, const std::string& str) : ctx(c), s(str) {}

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    long integer() {
        skip();
        size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        size_t k = j;
        while (k < s.size() && std::isdigit((unsigned char)s[k])) ++k;
        if (k == j) throw UsageError("scalar parse: integer expected at '" + s.substr(i) + "'");
        long v = std::stol(s.substr(i, k - i));
        i = k;
        return v;
    }
    ThetaScalar factor() {
        skip();
        if (i >= s.size()) throw UsageError("scalar parse: unexpected end");
        char c = s[i];
        if (c == '-') {
            ++i;
            return -factor();
        }
        if (c == '(') {
            ++i;
            ThetaScalar v = expr();
            if (!eat(')')) throw UsageError("scalar parse: ')' expected");
            return maybe_pow(v);
        }
        if (c == 'x') {
            ++i;
            long e = eat('^') ? integer() : 1;
            return ctx.xi(e);
        }
        if (c == 't') {
            ++i;
            long e = eat('^') ? integer() : 1;
            return ctx.theta(e);
        }
        if (std::isdigit((unsigned char)c)) {
            size_t k = i;
            while (k < s.size() && std::isdigit((unsigned char)s[k])) ++k;
            std::string num = s.substr(i, k - i);
            i = k;
            skip();
            if (i < s.size() && s[i] == '/') {
                size_t save = i;
                ++i;
                skip();
                size_t k2 = i;
                while (k2 < s.size() && std::isdigit((unsigned char)s[k2])) ++k2;
                if (k2 > i) {
                    std::string den = s.substr(i, k2 - i);
                    i = k2;
                    return maybe_pow(ctx.scalar(Rat(num + "/" + den)));
                }
                i = save;
            }
            return maybe_pow(ctx.scalar(Rat(num)));
        }
        throw UsageError(std::string("scalar parse: unexpected character '") + c + "'");
    }
    ThetaScalar maybe_pow(ThetaScalar v) {
        if (eat('^')) {
            long e = integer();
            return theta_pow(v, e);
        }
        return v;
    }
    ThetaScalar term() {
        ThetaScalar v = factor();
        while (true) {
            skip();
            if (eat('*'))
                v = v * factor();
            else
                break;
        }
        return v;
    }
    ThetaScalar expr() {
        ThetaScalar v = term();
        while (true) {
            skip();
            if (i >= s.size()) break;
            if (s[i] == '+') {
                ++i;
                v = v + term();
            } else if (s[i] == '-') {
                ++i;
                v = v - term();
            } else {
                break;
            }
        }
        return v;
    }
};

} // namespace

ThetaScalar parse_scalar(const ScalarContext& ctx, const std::string& text) {
    Parser p(ctx, text);
    ThetaScalar v = p.expr();
    p.skip();
    if (p.i != text.size()) throw UsageError("scalar parse: trailing input at '" + text.substr(p.i) + "'");
    return v;
}

} // namespace rad
