#pragma once

// Integral Chevalley basis via extraspecial pairs, brackets, and the contact cubic.

#include "conicfans/symdata.hpp"

#include <random>

namespace conicfans {

/// Basis order: h_1..h_r (simple coroots), then e_alpha in RootDatum::roots order.
class ChevalleyBasis {
public:
    explicit ChevalleyBasis(RootDatum rd) : rd_(std::move(rd)) { build(); }

    const RootDatum& roots() const { return rd_; }
    int rank() const { return rd_.rank; }
    int dim() const { return rd_.rank + static_cast<int>(rd_.roots.size()); }
    int e_index(const Root& a) const {
        int k = rd_.root_index(a);
        if (k < 0) throw std::invalid_argument("not a root");
        return rd_.rank + k;
    }

    /// N_{alpha,beta}; 0 when alpha + beta is not a root.
    int N(int a, int b) const { return nconst_[a * nroots_ + b]; }
    int N(const Root& a, const Root& b) const { return N(rd_.root_index(a), rd_.root_index(b)); }
    int sum_index(int a, int b) const { return sum_[a * nroots_ + b]; }

    /// Coordinates of alpha^vee in the simple coroots.
    const QVec& coroot(int a) const { return coroots_[a]; }

    /// Bracket of basis elements as sparse integer combination.
    std::vector<std::pair<int, long long>> basis_bracket(int x, int y) const {
        int r = rd_.rank;
        if (x < r && y < r) return {};
        if (x < r) return {{y, rd_.pair_simple(rd_.roots[y - r], x)}};
        if (y < r) return {{x, -static_cast<long long>(rd_.pair_simple(rd_.roots[x - r], y))}};
        int a = x - r, b = y - r;
        if (neg_[a] == b) {
            std::vector<std::pair<int, long long>> out;
            for (int i = 0; i < r; ++i)
                if (coroots_[a][i] != 0) out.emplace_back(i, to_ll(coroots_[a][i]));
            return out;
        }
        int n = N(a, b);
        if (n == 0) return {};
        return {{r + sum_index(a, b), n}};
    }

    QVec zero() const { return QVec(dim(), 0); }
    QVec basis_vector(int k) const {
        QVec v = zero();
        v[k] = 1;
        return v;
    }
    QVec e(const Root& a) const { return basis_vector(e_index(a)); }

    QVec bracket(const QVec& x, const QVec& y) const {
        QVec out = zero();
        std::vector<int> nx, ny;
        for (int i = 0; i < dim(); ++i) {
            if (x[i] != 0) nx.push_back(i);
            if (y[i] != 0) ny.push_back(i);
        }
        for (int i : nx)
            for (int j : ny)
                for (auto [k, c] : basis_bracket(i, j)) out[k] += x[i] * y[j] * c;
        return out;
    }

    QVec ad_power(const QVec& x, QVec y, int k) const {
        for (int i = 0; i < k; ++i) y = bracket(x, y);
        return y;
    }

    /// exp(ad z)(x) for nilpotent ad z.
    QVec exp_ad(const QVec& z, const QVec& x) const {
        QVec out = x, term = x;
        for (int k = 1; k <= dim(); ++k) {
            term = bracket(z, term);
            if (is_zero(term)) break;
            out = out + Q(1, 1) / factorial(k) * term;
        }
        return out;
    }

    /// Jacobi identity on a basis triple.
    bool jacobi_basis(int x, int y, int z) const {
        std::map<int, long long> acc;
        auto add = [&](int a, int b, int c) {
            for (auto [k, u] : basis_bracket(b, c))
                for (auto [l, v] : basis_bracket(a, k)) acc[l] += u * v;
        };
        add(x, y, z);
        add(y, z, x);
        add(z, x, y);
        for (auto& [k, v] : acc)
            if (v != 0) return false;
        return true;
    }

private:
    static Q factorial(int k) {
        Q f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    }

    void build() {
        nroots_ = static_cast<int>(rd_.roots.size());
        int npos = rd_.num_positive();
        neg_.assign(nroots_, -1);
        for (int a = 0; a < nroots_; ++a) {
            Root m = rd_.roots[a];
            for (auto& x : m) x = -x;
            neg_[a] = rd_.root_index(m);
        }
        sum_.assign(nroots_ * nroots_, -1);
        for (int a = 0; a < nroots_; ++a)
            for (int b = 0; b < nroots_; ++b) {
                Root s = rd_.roots[a];
                for (int i = 0; i < rd_.rank; ++i) s[i] += rd_.roots[b][i];
                sum_[a * nroots_ + b] = rd_.root_index(s);
            }
        coroots_.clear();
        for (const auto& a : rd_.roots) {
            QVec c(rd_.rank);
            Q na = rd_.form(a, a);
            for (int i = 0; i < rd_.rank; ++i) c[i] = Q(a[i]) * rd_.norms[i] / na;
            coroots_.push_back(c);
        }
        norm_.clear();
        for (const auto& a : rd_.roots) norm_.push_back(rd_.form(a, a));

        // special pairs (a, b), a < b positive, in order of the height of a + b
        special_.assign(npos * npos, 0);
        done_.assign(npos * npos, false);
        for (int xi = 0; xi < npos; ++xi) {
            int r1 = -1;
            for (int a = 0; a < xi && r1 < 0; ++a) {
                Root d = rd_.roots[xi];
                for (int i = 0; i < rd_.rank; ++i) d[i] -= rd_.roots[a][i];
                int b = rd_.root_index(d);
                if (b >= 0 && b < npos) r1 = a;
            }
            if (r1 < 0) continue;  // simple
            int s1 = positive_difference(xi, r1);
            set_special(r1, s1, string_p(r1, s1) + 1);
            for (int a = r1 + 1; a < xi; ++a) {
                int b = positive_difference(xi, a);
                if (b < 0 || b <= a) continue;
                // four-root relation with r + s - r1 - s1 = 0
                Q t = 0;
                int sr = sum_at(b, neg_[r1]), rs = sum_at(a, neg_[s1]);
                if (sr >= 0 && rs >= 0) t += Q(n_any(b, neg_[r1]) * n_any(a, neg_[s1])) / norm_[sr];
                int rr = sum_at(a, neg_[r1]), ss = sum_at(b, neg_[s1]);
                if (rr >= 0 && ss >= 0) t += Q(n_any(neg_[r1], a) * n_any(b, neg_[s1])) / norm_[rr];
                Q v = norm_[xi] * t / special_[r1 * npos + s1];
                set_special(a, b, static_cast<int>(to_ll(v)));
            }
        }
        nconst_.assign(nroots_ * nroots_, 0);
        for (int a = 0; a < nroots_; ++a)
            for (int b = 0; b < nroots_; ++b)
                if (sum_[a * nroots_ + b] >= 0) nconst_[a * nroots_ + b] = n_any(a, b);
    }

    int sum_at(int a, int b) const { return sum_[a * nroots_ + b]; }
    int positive_difference(int xi, int a) const {
        Root d = rd_.roots[xi];
        for (int i = 0; i < rd_.rank; ++i) d[i] -= rd_.roots[a][i];
        int b = rd_.root_index(d);
        return b >= 0 && b < rd_.num_positive() ? b : -1;
    }
    int string_p(int a, int b) const {
        int p = 0;
        Root d = rd_.roots[b];
        while (true) {
            for (int i = 0; i < rd_.rank; ++i) d[i] -= rd_.roots[a][i];
            if (!rd_.is_root(d)) return p;
            ++p;
        }
    }
    void set_special(int a, int b, int v) {
        int npos = rd_.num_positive();
        special_[a * npos + b] = v;
        done_[a * npos + b] = true;
    }

    /// N for an arbitrary pair whose sum is a root.
    int n_any(int x, int y) const {
        int npos = rd_.num_positive();
        bool px = x < npos, py = y < npos;
        if (px && py) {
            if (x < y) {
                if (!done_[x * npos + y]) throw StructureError("structure constant requested before definition");
                return special_[x * npos + y];
            }
            return -n_any(y, x);
        }
        if (!px && !py) return -n_any(neg_[x], neg_[y]);
        if (!px) return -n_any(y, x);
        // x > 0, y < 0, z = x + y
        int z = sum_at(x, y);
        if (z < npos) {
            // N_{x,y} = (z,z)/(x,x) * N_{y,-z} = -(z,z)/(x,x) N_{-y,z}
            Q v = -norm_[z] / norm_[x] * n_any(neg_[y], z);
            return static_cast<int>(to_ll(v));
        }
        // N_{x,y} = (z,z)/(y,y) * N_{-z,x}
        Q v = norm_[z] / norm_[y] * n_any(neg_[z], x);
        return static_cast<int>(to_ll(v));
    }

    RootDatum rd_;
    int nroots_ = 0;
    std::vector<int> neg_, sum_, nconst_, special_;
    std::vector<bool> done_;
    std::vector<QVec> coroots_;
    QVec norm_;
};

/// x is extremal when ad_x^2(g) lies in the line through x.
inline bool is_extremal(const ChevalleyBasis& cb, const QVec& x) {
    if (is_zero(x)) return false;
    int pivot = 0;
    while (x[pivot] == 0) ++pivot;
    for (int b = 0; b < cb.dim(); ++b) {
        QVec z = cb.ad_power(x, cb.basis_vector(b), 2);
        Q c = z[pivot] / x[pivot];
        for (int i = 0; i < cb.dim(); ++i)
            if (z[i] != c * x[i]) return false;
    }
    return true;
}

/// Point e_rho + t [e_{-rho}, e_rho] + t^2/2 ad_{e_{-rho}}^2 (e_rho) of the twistor conic.
inline QVec twistor_conic_sample(const ChevalleyBasis& cb, const Q& t) {
    Root rho = cb.roots().highest_root();
    Root mrho = rho;
    for (auto& x : mrho) x = -x;
    QVec er = cb.e(rho), em = cb.e(mrho);
    QVec one = cb.bracket(em, er);
    QVec two = cb.bracket(em, one);
    return er + t * one + (t * t / 2) * two;
}

/// Roots alpha with alpha_{j0}-coefficient -1.
inline std::vector<Root> contact_support(const RootDatum& rd) {
    int j0 = contact_node(rd);
    std::vector<Root> out;
    for (const auto& a : rd.roots)
        if (a[j0] == -1) out.push_back(a);
    return out;
}

inline void require_contact_support(const ChevalleyBasis& cb, const QVec& v) {
    int j0 = contact_node(cb.roots());
    for (int i = 0; i < cb.rank(); ++i)
        if (v[i] != 0) throw std::invalid_argument("contact_cubic: v has a Cartan component");
    for (std::size_t k = 0; k < cb.roots().roots.size(); ++k)
        if (v[cb.rank() + k] != 0 && cb.roots().roots[k][j0] != -1)
            throw std::invalid_argument("contact_cubic: v is not supported on the -1 eigenspace");
}

inline QVec contact_cubic(const ChevalleyBasis& cb, const QVec& v) {
    require_contact_support(cb, v);
    return cb.ad_power(v, cb.e(cb.roots().highest_root()), 3);
}

inline QVec contact_quadratic(const ChevalleyBasis& cb, const QVec& v) {
    require_contact_support(cb, v);
    return cb.ad_power(v, cb.e(cb.roots().highest_root()), 2);
}

namespace detail {

using Poly = QVec;  // coefficients, lowest degree first

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Q f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return a;
}

inline Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Q(static_cast<long>(i)) * p[i]);
    return d;
}

}  // namespace detail

/// Homogeneous components of ad_v^k(e_rho) for v = a x + b y, as coefficient vectors of a^{k-j} b^j.
inline std::vector<QVec> binary_form_components(const ChevalleyBasis& cb, const QVec& x, const QVec& y, int k) {
    std::vector<QVec> comp(k + 1, cb.zero());
    QVec er = cb.e(cb.roots().highest_root());
    for (int mask = 0; mask < (1 << k); ++mask) {
        QVec t = er;
        int nb = 0;
        for (int s = 0; s < k; ++s) {
            bool use_y = (mask >> s) & 1;
            nb += use_y;
            t = cb.bracket(use_y ? y : x, t);
        }
        comp[nb] = comp[nb] + t;
    }
    return comp;
}

/// Over C: every common zero of the cubic components (on the line a x + b y) kills the quadratic ones.
inline bool pair_implication_holds(const ChevalleyBasis& cb, const QVec& x, const QVec& y) {
    auto cub = binary_form_components(cb, x, y, 3);
    auto quad = binary_form_components(cb, x, y, 2);
    int d = cb.dim();
    // point at infinity b = 0 (v = x)
    bool cub_inf = true, quad_inf = true;
    for (int c = 0; c < d; ++c) {
        if (cub[0][c] != 0) cub_inf = false;
        if (quad[0][c] != 0) quad_inf = false;
    }
    if (cub_inf && !quad_inf) return false;
    // affine chart b = 1: coefficient of a^j is component (k - j)
    detail::Poly g;
    for (int c = 0; c < d; ++c) {
        detail::Poly p(4);
        for (int j = 0; j <= 3; ++j) p[j] = cub[3 - j][c];
        g = detail::poly_gcd(g, p);
    }
    detail::trim(g);
    if (g.empty()) {
        // cubic vanishes identically on the line: the quadratic must too
        for (const auto& q : quad)
            if (!is_zero(q)) return false;
        return true;
    }
    if (g.size() == 1) return true;
    detail::Poly sq = g;
    auto dg = detail::poly_gcd(g, detail::derivative(g));
    if (dg.size() > 1) {
        // squarefree part g / gcd(g, g')
        detail::Poly quo(g.size() - dg.size() + 1, 0), rem = g;
        while (rem.size() >= dg.size() && !rem.empty()) {
            Q f = rem.back() / dg.back();
            std::size_t shift = rem.size() - dg.size();
            quo[shift] = f;
            for (std::size_t i = 0; i < dg.size(); ++i) rem[shift + i] -= f * dg[i];
            detail::trim(rem);
        }
        sq = quo;
    }
    for (int c = 0; c < d; ++c) {
        detail::Poly p(3);
        for (int j = 0; j <= 2; ++j) p[j] = quad[2 - j][c];
        if (!detail::poly_mod(p, sq).empty()) return false;
    }
    return true;
}

struct ContactReport {
    std::string algebra;
    std::vector<std::string> witnesses;  // descriptions of the nonzero-cubic witnesses
    bool nonzero_witness = false;        // e_alpha + e_{-alpha-rho} gives a nonzero cubic
    int samples = 0;
    int implication_violations = 0;      // cubic = 0 but quadratic != 0
    int pairs_checked = 0;
    int pair_violations = 0;
    std::optional<std::string> counterexample;  // v with cubic 0 and quadratic nonzero
};

inline std::string describe(const ChevalleyBasis& cb, const QVec& v) {
    std::string s;
    for (std::size_t k = 0; k < cb.roots().roots.size(); ++k) {
        const Q& c = v[cb.rank() + k];
        if (c == 0) continue;
        s += (s.empty() ? "" : " + ") + c.str() + "*e[";
        const auto& r = cb.roots().roots[k];
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
        s += "]";
    }
    return s.empty() ? "0" : s;
}

/// Nonzero witness, seeded samples, coordinate pairs, and a search for v with cubic 0 but quadratic nonzero.
inline ContactReport contact_cubic_check(const ChevalleyBasis& cb, int samples, std::uint64_t seed) {
    const RootDatum& rd = cb.roots();
    ContactReport rep;
    rep.algebra = rd.name();
    int j0 = contact_node(rd);
    Root rho = rd.highest_root();
    Root a = rd.simple(j0);
    for (auto& x : a) x = -x;
    Root b(rd.rank);
    for (int i = 0; i < rd.rank; ++i) b[i] = -a[i] - rho[i];
    QVec w = cb.e(a) + cb.e(b);
    rep.nonzero_witness = !is_zero(contact_cubic(cb, w));
    rep.witnesses.push_back(describe(cb, w));

    auto supp = contact_support(rd);
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        QVec v = cb.zero();
        for (const auto& r : supp) {
            long long num = static_cast<long long>(rng() % 41) - 20;
            long long den = static_cast<long long>(rng() % 20) + 1;
            v[cb.e_index(r)] = Q(num, den);
        }
        ++rep.samples;
        if (is_zero(contact_cubic(cb, v)) && !is_zero(contact_quadratic(cb, v))) {
            ++rep.implication_violations;
            if (!rep.counterexample) rep.counterexample = describe(cb, v);
        }
    }
    for (std::size_t i = 0; i < supp.size(); ++i)
        for (std::size_t j = i + 1; j < supp.size(); ++j) {
            ++rep.pairs_checked;
            if (!pair_implication_holds(cb, cb.e(supp[i]), cb.e(supp[j]))) {
                ++rep.pair_violations;
                if (!rep.counterexample) {
                    // exhibit a rational point when one exists among small coefficients
                    for (int p = -3; p <= 3 && !rep.counterexample; ++p)
                        for (int q = -3; q <= 3 && !rep.counterexample; ++q) {
                            if (p == 0 && q == 0) continue;
                            QVec v = Q(p) * cb.e(supp[i]) + Q(q) * cb.e(supp[j]);
                            if (is_zero(contact_cubic(cb, v)) && !is_zero(contact_quadratic(cb, v)))
                                rep.counterexample = describe(cb, v);
                        }
                }
            }
        }
    return rep;
}

/// Searches small-support v with cubic 0 and quadratic nonzero.
inline std::optional<QVec> find_quadratic_witness(const ChevalleyBasis& cb) {
    auto supp = contact_support(cb.roots());
    for (const auto& r : supp) {
        QVec v = cb.e(r);
        if (is_zero(contact_cubic(cb, v)) && !is_zero(contact_quadratic(cb, v))) return v;
    }
    const int coeffs[] = {1, -1, 2, -2};
    for (std::size_t i = 0; i < supp.size(); ++i)
        for (std::size_t j = i + 1; j < supp.size(); ++j)
            for (int c : coeffs) {
                QVec v = cb.e(supp[i]) + Q(c) * cb.e(supp[j]);
                if (is_zero(contact_cubic(cb, v)) && !is_zero(contact_quadratic(cb, v))) return v;
            }
    return std::nullopt;
}

/// Automorphism n_i = exp(ad e_i) exp(-ad f_i) exp(ad e_i).
inline QVec weyl_automorphism(const ChevalleyBasis& cb, int i, const QVec& x) {
    Root a = cb.roots().simple(i), m = a;
    for (auto& y : m) y = -y;
    QVec e = cb.e(a), f = cb.e(m);
    QVec y = cb.exp_ad(e, x);
    y = cb.exp_ad(Q(-1) * f, y);
    return cb.exp_ad(e, y);
}

}  // namespace conicfans
