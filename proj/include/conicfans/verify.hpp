#pragma once

// Verification suite. Expensive per-algebra computation happens once (compute phase); the
// golden comparisons are cheap and can be re-run against a modified bundle (compare phase).

#include "conicfans/io.hpp"

#include <atomic>
#include <functional>
#include <thread>

namespace conicfans {

struct Check {
    std::string module;
    std::string name;
    bool pass;
    std::string detail;
};

struct VerifyOptions {
    int max_rank = 8;
    std::uint64_t seed = 1;
    int jacobi_samples = 100000;
    int twistor_samples = 20;
    int g2_samples = 10000;
    int contact_samples = 50;
    unsigned threads = 0;                       // 0: hardware concurrency
    std::set<std::string> modules;              // empty: everything
    bool wants(const std::string& m) const { return modules.empty() || modules.count(m) > 0; }
};

inline const std::vector<std::string>& verify_scopes() {
    static const std::vector<std::string> s{"all", "rootcore", "symdata", "lunavust", "conicatlas", "chevalley"};
    return s;
}

/// Results of the compute phase for one algebra.
struct Computed {
    SimpleType g;
    std::optional<ConicAtlas> at;
    std::vector<std::string> k_types;
    std::vector<ColorEntry> colors;
    OrbitReport chow_orbits, hilb_orbits;
    std::size_t double_cosets = 0;
    std::vector<Check> checks;
};

namespace detail {

class CheckList {
public:
    CheckList(std::vector<Check>& out, const VerifyOptions& o, std::string tag) : out_(out), o_(o), tag_(std::move(tag)) {}

    void add(const std::string& module, const std::string& name, bool pass, std::string detail = "") {
        if (!o_.wants(module)) return;
        out_.push_back({module, module + "." + name + tag_, pass, std::move(detail)});
    }
    /// Runs f; exceptions count as failures.
    void run(const std::string& module, const std::string& name, const std::function<bool(std::string&)>& f) {
        if (!o_.wants(module)) return;
        std::string detail;
        bool ok = false;
        try {
            ok = f(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        add(module, name, ok, detail);
    }

private:
    std::vector<Check>& out_;
    const VerifyOptions& o_;
    std::string tag_;
};

inline int dual_coxeter(const SimpleType& t) {
    switch (t.series) {
        case Series::A: return t.rank + 1;
        case Series::B: return 2 * t.rank - 1;
        case Series::C: return t.rank + 1;
        case Series::D: return 2 * t.rank - 2;
        case Series::E: return t.rank == 6 ? 12 : t.rank == 7 ? 18 : 30;
        case Series::F: return 9;
        case Series::G: return 4;
    }
    return 0;
}

inline std::size_t root_count(const SimpleType& t) {
    int r = t.rank;
    switch (t.series) {
        case Series::A: return static_cast<std::size_t>(r * (r + 1));
        case Series::B:
        case Series::C: return static_cast<std::size_t>(2 * r * r);
        case Series::D: return static_cast<std::size_t>(2 * r * (r - 1));
        case Series::E: return r == 6 ? 72 : r == 7 ? 126 : 240;
        case Series::F: return 48;
        case Series::G: return 12;
    }
    return 0;
}

inline std::uint64_t mix_seed(std::uint64_t seed, const SimpleType& g) {
    return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(g.series) * 131 + static_cast<std::uint64_t>(g.rank);
}

inline Q random_rational(std::mt19937_64& rng) {
    long long num = static_cast<long long>(rng() % 41) - 20;
    long long den = static_cast<long long>(rng() % 20) + 1;
    return Q(num, den);
}

inline Root negate(Root r) {
    for (auto& x : r) x = -x;
    return r;
}

/// Labeled digraph isomorphism by backtracking over equally labeled vertices.
inline bool labeled_isomorphic(const std::vector<std::string>& la, const std::set<std::pair<int, int>>& ea,
                               const std::vector<std::string>& lb, const std::set<std::pair<int, int>>& eb) {
    std::size_t n = la.size();
    if (lb.size() != n || ea.size() != eb.size()) return false;
    auto deg = [n](const std::set<std::pair<int, int>>& e) {
        std::vector<std::pair<int, int>> d(n, {0, 0});
        for (auto [u, v] : e) {
            ++d[u].first;
            ++d[v].second;
        }
        return d;
    };
    auto da = deg(ea), db = deg(eb);
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || lb[j] != la[i] || db[j] != da[i]) continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k) {
                int mk = map[k];
                if (ea.count({static_cast<int>(i), static_cast<int>(k)}) != eb.count({static_cast<int>(j), mk})) ok = false;
                if (ea.count({static_cast<int>(k), static_cast<int>(i)}) != eb.count({mk, static_cast<int>(j)})) ok = false;
            }
            if (!ok) continue;
            map[i] = static_cast<int>(j);
            used[j] = true;
            if (rec(i + 1)) return true;
            used[j] = false;
        }
        map[i] = -1;
        return false;
    };
    return rec(0);
}

/// Nonzero non-maximal cones of a fan, grouped by dimension.
inline std::map<int, std::set<std::vector<Ray>>> intermediate_faces(const ColoredFan& fan,
                                                                     const std::vector<ColoredCone>& maximal) {
    std::map<int, std::set<std::vector<Ray>>> out;
    for (const auto& c : fan.cones) {
        if (c.rays.empty() || std::find(maximal.begin(), maximal.end(), c) != maximal.end()) continue;
        out[c.dim()].insert(c.rays);
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------- compute phase

inline void rootcore_checks(const SimpleType& g, detail::CheckList& ck) {
    ck.run("rootcore", "root_count", [&](std::string& d) {
        auto rd = build_root_datum(g);
        d = std::to_string(rd.roots.size());
        return rd.roots.size() == detail::root_count(g);
    });
    ck.run("rootcore", "reflection_closure", [&](std::string&) { return roots_closed_under_reflections(build_root_datum(g)); });
    ck.run("rootcore", "killing_normalisation", [&](std::string& d) {
        auto rd = build_root_datum(g);
        Root rho = rd.highest_root();
        Q v = rd.form(rho, rho);
        d = v.str();
        return v == Q(1, detail::dual_coxeter(g));
    });
    ck.run("rootcore", "contact_grading", [&](std::string& d) {
        auto rd = build_root_datum(g);
        Root rho = rd.highest_root();
        int j0 = contact_node(rd);
        if (!rd.is_long(rd.simple(j0))) {
            d = "alpha_j0 is short";
            return false;
        }
        for (const auto& a : rd.roots) {
            Q m = 2 * rd.form(a, rho) / rd.form(rho, rho);
            if (m != a[j0] || a[j0] < -2 || a[j0] > 2) {
                d = "grading fails at " + vec_string(to_q(a));
                return false;
            }
        }
        return rho[j0] == 2;
    });
    ck.run("rootcore", "maximal_parabolic_orbit", [&](std::string& d) {
        auto rd = build_root_datum(g);
        int j0 = contact_node(rd);
        IVec rest;
        for (int i = 0; i < rd.rank; ++i)
            if (i != j0) rest.push_back(i);
        unsigned long long wl = weyl_order(subdiagram(rd, rest));
        auto orb = coset_orbit(rd, ParabolicSubset{{j0}});
        d = std::to_string(orb.size());
        return orb.size() * wl == weyl_order_formula(g);
    });
    ck.run("rootcore", "unique_line_below_rho", [&](std::string& d) {
        auto rd = build_root_datum(g);
        Root rho = rd.highest_root();
        int j0 = contact_node(rd);
        Root r1 = rho;
        r1[j0] -= 1;
        std::vector<Root> maxima;
        for (const auto& x : rd.roots) {
            if (x == rho) continue;
            bool maximal = true;
            for (const auto& y : rd.roots) {
                if (y == rho || y == x) continue;
                bool ge = true;
                for (int k = 0; k < rd.rank; ++k)
                    if (y[k] < x[k]) ge = false;
                if (ge) maximal = false;
            }
            if (maximal) maxima.push_back(x);
        }
        d = std::to_string(maxima.size()) + " maxima";
        return maxima.size() == 1 && maxima[0] == r1;
    });
}

inline void chevalley_checks(const SimpleType& g, const VerifyOptions& o, detail::CheckList& ck) {
    if (!o.wants("chevalley")) return;
    ChevalleyBasis cb(build_root_datum(g));
    const RootDatum& rd = cb.roots();
    std::mt19937_64 rng(detail::mix_seed(o.seed, g));
    int dim = cb.dim();

    ck.run("chevalley", "jacobi", [&](std::string& d) {
        std::size_t bad = 0, n = 0;
        if (rd.rank <= 4) {
            for (int x = 0; x < dim; ++x)
                for (int y = x + 1; y < dim; ++y)
                    for (int z = y + 1; z < dim; ++z, ++n)
                        if (!cb.jacobi_basis(x, y, z)) ++bad;
        } else {
            for (int s = 0; s < o.jacobi_samples; ++s, ++n) {
                int x = static_cast<int>(rng() % dim), y = static_cast<int>(rng() % dim), z = static_cast<int>(rng() % dim);
                if (!cb.jacobi_basis(x, y, z)) ++bad;
            }
        }
        d = std::to_string(n) + " triples, " + std::to_string(bad) + " failures";
        return bad == 0;
    });
    ck.run("chevalley", "antisymmetry", [&](std::string& d) {
        for (int x = 0; x < dim; ++x)
            for (int y = 0; y < dim; ++y) {
                auto a = cb.basis_bracket(x, y), b = cb.basis_bracket(y, x);
                std::map<int, long long> s;
                for (auto [k, c] : a) s[k] += c;
                for (auto [k, c] : b) s[k] += c;
                for (auto& [k, c] : s)
                    if (c != 0) {
                        d = "basis pair " + std::to_string(x) + "," + std::to_string(y);
                        return false;
                    }
            }
        return true;
    });
    ck.run("chevalley", "structure_constants", [&](std::string& d) {
        int nr = static_cast<int>(rd.roots.size());
        for (int a = 0; a < nr; ++a)
            for (int b = 0; b < nr; ++b) {
                const Root& al = rd.roots[a];
                const Root& be = rd.roots[b];
                Root s(rd.rank);
                for (int k = 0; k < rd.rank; ++k) s[k] = al[k] + be[k];
                int n = cb.N(a, b);
                if (!rd.is_root(s)) {
                    if (n != 0) {
                        d = "N nonzero off the root system";
                        return false;
                    }
                    continue;
                }
                // alpha-string through beta: beta - p alpha, ..., beta
                int p = 0;
                Root t = be;
                while (true) {
                    for (int k = 0; k < rd.rank; ++k) t[k] -= al[k];
                    if (!rd.is_root(t)) break;
                    ++p;
                }
                if (std::abs(n) != p + 1) {
                    d = "|N| != p+1 at " + vec_string(to_q(al)) + "," + vec_string(to_q(be));
                    return false;
                }
                if (cb.N(al, be) != -cb.N(be, al)) {
                    d = "N not antisymmetric";
                    return false;
                }
                if (cb.N(detail::negate(al), detail::negate(be)) != -n) {
                    d = "N_{-a,-b} != -N_{a,b}";
                    return false;
                }
            }
        return true;
    });

    Root rho = rd.highest_root(), mrho = detail::negate(rho);
    QVec er = cb.e(rho), em = cb.e(mrho);
    ck.run("chevalley", "sl2_triple", [&](std::string& d) {
        // rho^vee in simple coroots: c_i = rho_i (alpha_i, alpha_i) / (rho, rho)
        QVec h = cb.zero();
        for (int i = 0; i < rd.rank; ++i)
            h[i] = Q(rho[i]) * rd.form(rd.simple(i), rd.simple(i)) / rd.form(rho, rho);
        QVec b = cb.bracket(er, em);
        QVec ad2 = cb.ad_power(em, er, 2);
        d = vec_string(b);
        return b == h && ad2 == Q(-2) * em && cb.bracket(h, er) == Q(2) * er;
    });
    ck.run("chevalley", "extremal_reference", [&](std::string&) {
        return is_extremal(cb, er) && !is_extremal(cb, er + em);
    });
    ck.run("chevalley", "extremal_weyl_invariance", [&](std::string& d) {
        QVec bad = er + em;
        for (int i = 0; i < rd.rank; ++i) {
            QVec x = weyl_automorphism(cb, i, er);
            Root target = reflect(rd, rho, i);
            QVec ex = cb.e(target);
            int k = cb.e_index(target);
            if (x != x[k] * ex || (x[k] != 1 && x[k] != -1)) {
                d = "n_" + std::to_string(i + 1) + "(e_rho) is not +-e_{s rho}";
                return false;
            }
            if (!is_extremal(cb, x) || is_extremal(cb, weyl_automorphism(cb, i, bad))) {
                d = "extremality changed under n_" + std::to_string(i + 1);
                return false;
            }
        }
        return true;
    });
    ck.run("chevalley", "twistor_samples", [&](std::string& d) {
        QVec t1 = twistor_conic_sample(cb, Q(1));
        QVec h = cb.bracket(em, er);
        if (t1 != er + h + Q(-1) * em) {
            d = "t = 1 sample";
            return false;
        }
        if (twistor_conic_sample(cb, Q(0)) != er) return false;
        for (int s = 0; s < o.twistor_samples; ++s) {
            Q t = detail::random_rational(rng);
            QVec x = twistor_conic_sample(cb, t);
            if (x[cb.e_index(mrho)] != -t * t || !is_extremal(cb, x)) {
                d = "sample t = " + t.str();
                return false;
            }
        }
        d = std::to_string(o.twistor_samples) + " samples";
        return true;
    });
    ck.run("chevalley", "contact_dimension", [&](std::string& d) {
        auto a = adjoint_data(g.series, g.rank);
        d = std::to_string(contact_support(rd).size());
        return static_cast<int>(contact_support(rd).size()) == 2 * a.n;
    });
    ck.run("chevalley", "line_direction", [&](std::string&) {
        int j0 = contact_node(rd);
        QVec v = cb.e(detail::negate(rd.simple(j0)));
        return is_zero(contact_quadratic(cb, v)) && is_zero(contact_cubic(cb, v));
    });
    ck.run("chevalley", "contact_domain", [&](std::string&) {
        try {
            contact_cubic(cb, er);
        } catch (const std::invalid_argument&) {
            return is_zero(contact_cubic(cb, cb.zero()));
        }
        return false;
    });
    ck.run("chevalley", "torus_scaling", [&](std::string& d) {
        auto supp = contact_support(rd);
        for (int s = 0; s < 5; ++s) {
            QVec c(rd.rank);
            for (auto& x : c) {
                do x = detail::random_rational(rng);
                while (x == 0);
            }
            auto chi = [&](const Root& a) {
                Q f = 1;
                for (int i = 0; i < rd.rank; ++i)
                    for (int u = 0; u < std::abs(a[i]); ++u) f = a[i] > 0 ? Q(f * c[i]) : Q(f / c[i]);
                return f;
            };
            auto tau = [&](const QVec& v) {
                QVec w = v;
                for (std::size_t k = 0; k < rd.roots.size(); ++k) w[rd.rank + k] *= chi(rd.roots[k]);
                return w;
            };
            QVec v = cb.zero();
            for (const auto& r : supp)
                if (rng() % 3 == 0) v[cb.e_index(r)] = detail::random_rational(rng);
            // ad_{tau v}^3 (tau e_rho) = tau (ad_v^3 e_rho)
            if (chi(rho) * contact_cubic(cb, tau(v)) != tau(contact_cubic(cb, v))) {
                d = "scaling mismatch";
                return false;
            }
        }
        return true;
    });
    int samples = g.series == Series::G ? o.g2_samples : o.contact_samples;
    auto rep = contact_cubic_check(cb, samples, detail::mix_seed(o.seed, g));
    ck.add("chevalley", "nonplanar_witness", rep.nonzero_witness, rep.witnesses.empty() ? "" : rep.witnesses[0]);
    if (g.series == Series::G)
        ck.add("chevalley", "g2_implication", rep.implication_violations == 0 && rep.pair_violations == 0,
               std::to_string(rep.samples) + " samples, " + std::to_string(rep.pairs_checked) + " pairs, " +
                   std::to_string(rep.implication_violations + rep.pair_violations) + " violations");
    if (g.series == Series::B && g.rank == 3) {
        auto w = find_quadratic_witness(cb);
        ck.add("chevalley", "b3_quadratic_witness", w.has_value(), w ? describe(cb, *w) : "none");
    }
}

inline void atlas_checks(Computed& c, const VerifyOptions& o, detail::CheckList& ck) {
    const ConicAtlas& at = *c.at;
    ck.run("symdata", "restricted_roots", [&](std::string& d) {
        auto got = restricted_roots_in_lambda(at.rr);
        std::set<IVec> want(at.rr.restricted.roots.begin(), at.rr.restricted.roots.end());
        d = std::to_string(got.size()) + "/" + std::to_string(want.size());
        return got == want;
    });
    ck.run("symdata", "gamma_closed_form", [&](std::string&) {
        return closed_form_gamma(at.rr.restricted_type) == at.rr.gamma;
    });
    ck.run("lunavust", "chow_fan_valid", [&](std::string& d) { return is_colored_fan(at.sp, at.chow, &d); });
    ck.run("lunavust", "hilb_fan_valid", [&](std::string& d) { return is_colored_fan(at.sp, at.hilb, &d); });
    ck.run("lunavust", "chow_complete", [&](std::string&) { return is_complete(at.sp, at.chow); });
    ck.run("lunavust", "hilb_complete", [&](std::string&) { return is_complete(at.sp, at.hilb); });
    ck.run("lunavust", "strict_convexity", [&](std::string&) {
        for (const auto* f : {&at.chow, &at.hilb})
            for (const auto& cc : f->cones)
                if (!is_pointed(ray_vectors(cc))) return false;
        return true;
    });
    ck.run("lunavust", "chow_cone_from_colors", [&](std::string&) {
        // cone(eps(F) and the rays of V), recomputed from the color vectors
        std::vector<QVec> gens = at.sp.valuation_rays();
        for (int i : at.chow_cone.colors) gens.push_back(at.sp.color_vector(i));
        return extremal_rays(gens) == at.chow_cone.rays && at.chow.contains(at.chow_cone);
    });
    ck.run("lunavust", "hilb_smooth", [&](std::string& d) {
        for (const auto& m : at.hilb_max) {
            auto r = ruzzi_smooth(at.sp, m);
            if (!r.smooth()) {
                d = r.failure;
                return false;
            }
        }
        return true;
    });
    ck.run("lunavust", "chow_smoothness", [&](std::string& d) {
        auto r = ruzzi_smooth(at.sp, at.chow_cone);
        d = r.smooth() ? "smooth" : r.failure;
        return r.smooth() == (c.g.series == Series::G);
    });
    ck.run("lunavust", "fc_isomorphism", [&](std::string&) {
        return (at.chow.cones == at.hilb.cones) == (c.g.series == Series::G);
    });
    ck.run("conicatlas", "plane_stabilizers", [&](std::string& d) {
        for (const auto& p : at.planes) {
            auto s = stabilizer_of_root_span(at.adj.g, p.roots);
            if (s.missing != p.stabilizer.missing) {
                d = "beta " + std::to_string(p.beta + 1) + ": " + set_label(s.missing) + " vs " + set_label(p.stabilizer.missing);
                return false;
            }
        }
        return true;
    });
    ck.run("conicatlas", "planes_exhaust_maxima", [&](std::string&) {
        std::set<Root> third;
        for (const auto& p : at.planes) third.insert(p.roots[2]);
        auto m = maximal_roots_below_line(at.adj);
        return third == std::set<Root>(m.begin(), m.end());
    });
    ck.run("conicatlas", "closed_orbits_match_planes", [&](std::string&) { return at.hilb_max.size() == at.planes.size(); });
    ck.run("conicatlas", "orbit_labels_consistent", [&](std::string& d) {
        for (const auto& s : c.chow_orbits.issues) d += s + "; ";
        for (const auto& s : c.hilb_orbits.issues) d += s + "; ";
        return c.chow_orbits.issues.empty() && c.hilb_orbits.issues.empty();
    });
    ck.run("conicatlas", "reducible_ray_faces", [&](std::string& d) {
        std::size_t n = faces_containing_reducible_ray(at);
        d = std::to_string(n);
        return n == c.double_cosets;
    });
    (void)o;
}

inline Computed compute_entry(const SimpleType& g, const VerifyOptions& o) {
    Computed c{g, std::nullopt, {}, {}, {}, {}, 0, {}};
    detail::CheckList ck(c.checks, o, "[" + g.name() + "]");
    if (o.wants("rootcore")) rootcore_checks(g, ck);
    chevalley_checks(g, o, ck);
    bool need_atlas = o.wants("symdata") || o.wants("lunavust") || o.wants("conicatlas") || o.wants("golden");
    if (!need_atlas) return c;
    try {
        c.at = build_atlas(g.series, g.rank);
        c.k_types = fixed_subalgebra_type(c.at->adj.g);
        c.colors = color_table(c.at->rr);
        c.chow_orbits = orbit_report(*c.at, SchemeKind::Chow);
        c.hilb_orbits = orbit_report(*c.at, SchemeKind::Hilbert);
        c.double_cosets = double_coset_value(c.at->adj);
    } catch (const std::exception& e) {
        c.at.reset();
        ck.add("conicatlas", "build", false, e.what());
        return c;
    }
    ck.add("conicatlas", "build", true);
    atlas_checks(c, o, ck);
    return c;
}

// ---------------------------------------------------------------- compare phase

inline std::vector<Check> compare_entry(const Computed& c, const GoldenBundle& gb, const VerifyOptions& o) {
    std::vector<Check> out;
    if (!c.at) return out;
    const ConicAtlas& at = *c.at;
    const SimpleType& g = c.g;
    const long long r = g.rank;
    const Family fam = at.family();
    detail::CheckList ck(out, o, "[" + g.name() + "]");

    // table 1
    ck.run("symdata", "table1", [&](std::string& d) {
        const json& row = select_row(gb["table1.json"].at("rows"), g);
        std::vector<std::string> k;
        for (const auto& t : row.at("k")) k.push_back(canonical_type_string(t.get<std::string>(), r));
        std::sort(k.begin(), k.end());
        if (k != c.k_types) {
            d = "g^sigma types differ";
            return false;
        }
        if (zero_based(expand_index_set(row.at("black"), r)) != at.rr.satake.black) {
            d = "black nodes differ";
            return false;
        }
        std::set<std::pair<int, int>> want, got;
        for (const auto& a : row.at("arrows")) {
            int x = static_cast<int>(eval_value(a.at(0), r)) - 1, y = static_cast<int>(eval_value(a.at(1), r)) - 1;
            want.insert({std::min(x, y), std::max(x, y)});
        }
        for (auto [x, y] : at.rr.satake.arrows) got.insert({std::min(x, y), std::max(x, y)});
        if (want != got || row.at("arrows").size() != want.size()) {
            d = "arrows differ";
            return false;
        }
        if (canonical_type_string(row.at("restricted").get<std::string>(), r) !=
            canonical_type_name(at.rr.restricted_type)) {
            d = "restricted type differs";
            return false;
        }
        const json& lam = row.at("lambda");
        if (lam.size() != at.rr.groups.size()) {
            d = "number of restricted simple roots differs";
            return false;
        }
        for (std::size_t i = 0; i < lam.size(); ++i) {
            std::set<int> grp(at.rr.groups[i].begin(), at.rr.groups[i].end());
            if (zero_based(expand_index_set(lam[i], r)) != grp || lam[i].size() != grp.size()) {
                d = "lambda_" + std::to_string(i + 1) + " differs";
                return false;
            }
        }
        return true;
    });

    // gamma closed forms and duality
    ck.run("symdata", "gamma_duality", [&](std::string& d) {
        const json& gm = gb["gamma31.json"].at(canonical_type_name(at.rr.restricted_type));
        int m = at.rr.rank();
        if (static_cast<int>(gm.size()) != m) return false;
        for (int j = 0; j < m; ++j) {
            QVec gj = json_qvec(gm[j]);
            if (static_cast<int>(gj.size()) != m) return false;
            for (int i = 0; i < m; ++i) {
                Q v = dot(at.sp.pairing_row(i), gj);
                if (v != (i == j ? 1 : 0)) {
                    d = "<lambda_" + std::to_string(i + 1) + ", gamma_" + std::to_string(j + 1) + "> = " + v.str();
                    return false;
                }
            }
            if (gj != at.rr.gamma[j]) {
                d = "gamma_" + std::to_string(j + 1) + " differs from the computed coweight";
                return false;
            }
        }
        return true;
    });

    // table 6
    ck.run("symdata", "table6", [&](std::string& d) {
        const json& row = select_row(gb["table6.json"].at("rows"), g);
        std::set<Root> want, got;
        for (const auto& sr : row.at("spherical_roots")) {
            Root v(g.rank, 0);
            for (const auto& term : sr)
                for (long long idx : expand_indices(term.at(0), r)) {
                    if (idx < 1 || idx > g.rank) throw std::out_of_range("spherical root index");
                    v[idx - 1] += static_cast<int>(eval_value(term.at(1), r));
                }
            want.insert(v);
        }
        for (const auto& col : c.colors) got.insert(col.spherical_root);
        if (want != got || row.at("spherical_roots").size() != got.size()) {
            d = "spherical roots differ";
            return false;
        }
        const json& cols = row.at("colors");
        if (cols.size() != c.colors.size()) return false;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i].at(0).get<std::string>() != c.colors[i].type ||
                eval_value(cols[i].at(1), r) != c.colors[i].a_coefficient) {
                d = "color D" + std::to_string(i + 1) + ": " + c.colors[i].type + ", a = " +
                    std::to_string(c.colors[i].a_coefficient);
                return false;
            }
        }
        return true;
    });

    // table 2 and the isotropy equations
    ck.run("conicatlas", "table2", [&](std::string& d) {
        const json& e = select_family(gb["table2.json"].at("cones"), fam);
        auto cone = fixture_cone(at.sp, e.at("rays"), e.at("colors"));
        d = cone_text(at.sp, at.chow_cone);
        return cone == at.chow_cone && e.at("rays").size() == at.chow_cone.rays.size();
    });
    ck.run("conicatlas", "isotropy_chow", [&](std::string& d) {
        const json& row = select_row(gb["table2.json"].at("isotropy"), g);
        ParabolicSubset stab{zero_based(expand_index_set(row.at("line_stabilizer"), r))};
        std::vector<ParabolicSubset> tw;
        for (const auto& t : row.at("twisted")) tw.push_back({zero_based(expand_index_set(t, r))});
        if (stab.missing != at.chow_target.missing) {
            d = "line stabilizer " + set_label(at.chow_target.missing);
            return false;
        }
        if (tw.size() != at.twisted.size()) return false;
        for (std::size_t i = 0; i < tw.size(); ++i)
            if (tw[i].missing != at.twisted[i].missing) {
                d = "twisted parabolic of D" + std::to_string(i + 1) + " is " + set_label(at.twisted[i].missing);
                return false;
            }
        auto f = solve_colors(tw, stab);
        const json& e = select_family(gb["table2.json"].at("cones"), fam);
        std::set<int> want = zero_based(expand_index_set(e.at("colors"), r));
        return f && *f == want && *f == at.chow_cone.colors;
    });

    // table 3
    ck.run("conicatlas", "table3", [&](std::string& d) {
        const json& e = select_family(gb["table3.json"].at("cones"), fam);
        std::set<ColoredCone> want, got(at.hilb_max.begin(), at.hilb_max.end());
        for (const auto& m : e.at("maximal")) {
            auto cone = fixture_cone(at.sp, m.at("rays"), m.at("colors"));
            if (m.at("rays").size() != cone.rays.size()) return false;
            want.insert(cone);
        }
        d = std::to_string(got.size()) + " maximal cones";
        return want == got && e.at("maximal").size() == got.size();
    });
    ck.run("conicatlas", "hilb_simplicity", [&](std::string&) {
        bool simple = gb["table3.json"].at("simple").at(family_name(fam)).get<bool>();
        bool exceptional = g.series == Series::E || g.series == Series::F || g.series == Series::G;
        return simple == (at.hilb_max.size() == 1) && simple == exceptional;
    });
    if (g.series == Series::E || g.series == Series::F || g.series == Series::G)
        ck.run("conicatlas", "isotropy_hilb", [&](std::string& d) {
            const json& row = select_row(gb["table3.json"].at("closed_orbit_isotropy"), g);
            ParabolicSubset stab{zero_based(expand_index_set(row.at("stabilizer"), r))};
            if (stab.missing != at.hilb_targets.at(0).missing) {
                d = "closed orbit isotropy " + set_label(at.hilb_targets[0].missing);
                return false;
            }
            auto f = solve_colors(at.twisted, stab);
            const json& e = select_family(gb["table3.json"].at("cones"), fam);
            std::set<int> want = zero_based(expand_index_set(e.at("maximal").at(0).at("colors"), r));
            return f && *f == want;
        });

    // table 4
    ck.run("conicatlas", "table4", [&](std::string& d) {
        const json& row = select_row(gb["table4.json"].at("rows"), g);
        if (eval_value(row.at("j0"), r) != at.adj.j0 + 1) {
            d = "j0 = " + std::to_string(at.adj.j0 + 1);
            return false;
        }
        if (eval_value(row.at("n"), r) != at.adj.n) {
            d = "n = " + std::to_string(at.adj.n);
            return false;
        }
        const json& pl = row.at("planes");
        if (pl.size() != at.planes.size()) return false;
        std::set<int> betas;
        for (const auto& p : pl) {
            int beta = static_cast<int>(eval_value(p.at("beta"), r)) - 1;
            betas.insert(beta);
            auto it = std::find_if(at.planes.begin(), at.planes.end(), [&](const BStablePlane& q) { return q.beta == beta; });
            if (it == at.planes.end()) return false;
            if (zero_based(expand_index_set(p.at("stabilizer"), r)) != it->stabilizer.missing ||
                p.at("in_z").get<bool>() != it->in_z) {
                d = "plane beta = " + std::to_string(beta + 1);
                return false;
            }
        }
        return betas.size() == pl.size();
    });
    ck.run("conicatlas", "line_stabilizer", [&](std::string& d) {
        d = set_label(line_stabilizer(at.adj).missing);
        const json& row = select_row(gb["table2.json"].at("isotropy"), g);
        return zero_based(expand_index_set(row.at("line_stabilizer"), r)) == neighbors(at.adj.g, at.adj.j0);
    });

    // table 5
    ck.run("conicatlas", "table5", [&](std::string& d) {
        const json& row = select_row(gb["table5.json"].at("rows"), g);
        d = std::to_string(c.double_cosets);
        return eval_value(row.at("value"), r) == static_cast<long long>(c.double_cosets);
    });
    ck.run("conicatlas", "reducible_classes", [&](std::string& d) {
        const json& t = gb["orbitcounts.json"].at("chow").at(family_name(fam)).at("types");
        long long red = t.value("NPR", 0) + t.value("PR", 0);
        d = std::to_string(red) + " reducible classes";
        return red == static_cast<long long>(c.double_cosets) - 1;
    });

    // orbit counts and labels
    auto counts = [&](const std::string& kind, const OrbitReport& rep) {
        ck.run("conicatlas", "orbit_counts_" + kind, [&](std::string& d) {
            const json& e = gb["orbitcounts.json"].at(kind).at(family_name(fam));
            std::map<std::string, int> want;
            long long sum = 0;
            for (auto it = e.at("types").begin(); it != e.at("types").end(); ++it) {
                want[it.key()] = it.value().get<int>();
                sum += it.value().get<int>();
            }
            d = std::to_string(rep.nodes.size()) + " orbits";
            return e.at("total").get<long long>() == static_cast<long long>(rep.nodes.size()) && sum == e.at("total").get<long long>() &&
                   want == rep.type_counts;
        });
    };
    counts("chow", c.chow_orbits);
    counts("hilb", c.hilb_orbits);
    ck.run("conicatlas", "reducible_ray", [&](std::string& d) {
        std::string s = gb["orbitcounts.json"].at("reducible_ray").at(family_name(fam)).get<std::string>();
        d = reducible_divisor_symbol(g);
        return primitive(parse_generator(at.sp, s)) == primitive(parse_generator(at.sp, reducible_divisor_symbol(g)));
    });

    // faces by dimension
    auto faces = [&](const std::string& kind, const ColoredFan& fan, const std::vector<ColoredCone>& maximal) {
        ck.run("lunavust", "faces_" + kind, [&](std::string& d) {
            const json& e = gb["faces31.json"].at(kind).at(family_name(fam));
            std::map<int, std::set<std::vector<Ray>>> want;
            std::size_t listed = 0;
            for (auto it = e.begin(); it != e.end(); ++it) {
                int dim = std::stoi(it.key());
                for (const auto& cone : it.value()) {
                    auto rays = fixture_rays(at.sp, cone);
                    if (static_cast<int>(rank_of(ray_vectors(ColoredCone{rays, {}}), at.sp.dim())) != dim) {
                        d = "listed cone has the wrong dimension";
                        return false;
                    }
                    if (cone.size() != rays.size()) return false;
                    want[dim].insert(rays);
                    ++listed;
                }
            }
            auto got = detail::intermediate_faces(fan, maximal);
            std::size_t total = 0;
            for (auto& [k, v] : got) total += v.size();
            d = std::to_string(total) + " faces";
            return want == got && listed == total;
        });
    };
    faces("chow", at.chow, {at.chow_cone});
    faces("hilb", at.hilb, at.hilb_max);

    // Hasse diagram
    ck.run("conicatlas", "hasse", [&](std::string& d) {
        const json& h = gb["hasse51.json"].at(family_name(fam));
        std::map<std::string, int> id;
        std::vector<std::string> la;
        for (auto it = h.at("nodes").begin(); it != h.at("nodes").end(); ++it) {
            id[it.key()] = static_cast<int>(la.size());
            la.push_back(it.value().get<std::string>());
        }
        std::set<std::pair<int, int>> ea;
        for (const auto& e : h.at("edges")) ea.insert({id.at(e.at(0).get<std::string>()), id.at(e.at(1).get<std::string>())});
        if (ea.size() != h.at("edges").size()) {
            d = "repeated edge";
            return false;
        }
        std::vector<std::string> lb;
        for (const auto& n : c.hilb_orbits.nodes) lb.push_back(n.label);
        std::set<std::pair<int, int>> eb(c.hilb_orbits.edges.begin(), c.hilb_orbits.edges.end());
        d = std::to_string(lb.size()) + " nodes, " + std::to_string(eb.size()) + " edges";
        return detail::labeled_isomorphic(la, ea, lb, eb);
    });

    // explicit smoothness bases
    for (const auto& fx : gb["ruzzi.json"].at("fixtures")) {
        if (fx.at("family").get<std::string>() != family_name(fam)) continue;
        std::string tag;
        for (const auto& s : fx.at("rays")) tag += s.get<std::string>();
        ck.run("lunavust", "ruzzi_basis_" + tag, [&](std::string& d) {
            auto cone = fixture_cone(at.sp, fx.at("rays"), fx.at("colors"));
            if (std::find(at.hilb_max.begin(), at.hilb_max.end(), cone) == at.hilb_max.end()) {
                d = "not a maximal Hilbert cone";
                return false;
            }
            std::vector<QVec> basis;
            for (const auto& b : fx.at("basis")) basis.push_back(json_qvec(b));
            if (basis.size() != at.sp.dim()) return false;
            // condition (2): B spans the cone and 2B is a lattice basis
            if (extremal_rays(basis) != cone.rays) {
                d = "B does not generate the cone";
                return false;
            }
            QMatrix twice;
            for (const auto& b : basis) twice.push_back(Q(2) * b);
            Q det = determinant(twice);
            if (det != 1 && det != -1) {
                d = "det = " + det.str();
                return false;
            }
            auto dual = dual_basis(basis);
            std::map<std::string, int> pos;
            std::set<int> seen;
            for (auto it = fx.at("dual").begin(); it != fx.at("dual").end(); ++it) {
                QVec y = json_qvec(it.value());
                auto f = std::find(dual.begin(), dual.end(), y);
                if (f == dual.end()) {
                    d = it.key() + " is not in the dual basis";
                    return false;
                }
                pos[it.key()] = static_cast<int>(f - dual.begin());
                seen.insert(pos[it.key()]);
            }
            if (seen.size() != dual.size()) return false;
            // condition (3) with the given labels y^j_i
            auto chains = levi_chains(at.sp.restricted, cone.colors);
            if (!chains) return false;
            RuzziIndexing ix{*chains, {}};
            std::map<int, std::vector<std::pair<int, int>>> blocks;
            for (const auto& [name, p] : pos) blocks[name[1] - '0'].push_back({name[2] - '0', p});
            for (auto& [j, v] : blocks) {
                std::sort(v.begin(), v.end());
                if (j <= static_cast<int>(chains->size())) {
                    IVec b;
                    for (auto [i, p] : v) b.push_back(p);
                    ix.blocks.push_back(b);
                }
            }
            for (auto& [j, v] : blocks)
                if (j > static_cast<int>(chains->size()))
                    for (auto [i, p] : v) ix.blocks.push_back({p});
            return ruzzi_indexing_holds(at.sp.restricted, dual, ix);
        });
    }
    return out;
}

/// Checks that concern the bundle as a whole.
inline std::vector<Check> compare_global(const std::vector<Computed>& all, const GoldenBundle& gb, const VerifyOptions& o) {
    std::vector<Check> out;
    detail::CheckList ck(out, o, "");
    for (const auto& f : golden_files())
        ck.run("golden", "canonical[" + f + "]", [&](std::string&) { return gb.raw.at(f) == canonical_dump(gb[f]); });
    // every fixture row must be used by some algebra in range, otherwise it is dead data
    int top = 0;
    for (const auto& c : all) top = std::max(top, c.g.rank);
    auto used = [&](const std::string& file, const std::string& key) {
        ck.run("golden", "rows_used[" + file + "]", [&](std::string& d) {
            for (const auto& row : gb[file].at(key)) {
                bool hit = false;
                for (const auto& c : all)
                    if (row_applies(row, c.g)) hit = true;
                // rows beyond the rank cap are allowed to go unused
                if (!hit && row.at("min").get<int>() <= top) {
                    d = row.value("row", "?");
                    return false;
                }
            }
            return true;
        });
    };
    if (o.wants("golden") && !all.empty()) {
        ck.run("golden", "rows_used[ruzzi.json]", [&](std::string& d) {
            for (const auto& fx : gb["ruzzi.json"].at("fixtures")) {
                bool hit = false;
                for (const auto& c : all)
                    if (c.at && family_name(c.at->family()) == fx.at("family").get<std::string>()) hit = true;
                if (!hit) {
                    d = fx.at("family").get<std::string>();
                    return false;
                }
            }
            return true;
        });
        used("table1.json", "rows");
        used("table2.json", "isotropy");
        used("table3.json", "closed_orbit_isotropy");
        used("table4.json", "rows");
        used("table5.json", "rows");
        used("table6.json", "rows");
    }
    return out;
}

// ---------------------------------------------------------------- driver

struct VerifyReport {
    std::vector<Check> checks;
    std::size_t failed() const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
    }
    bool ok() const { return failed() == 0; }
};

/// Runs f(i) for i in [0, n) on a small worker pool.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex m;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(m);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

inline std::vector<Computed> compute_all(const VerifyOptions& o) {
    auto algebras = supported_algebras(o.max_rank);
    std::vector<Computed> all(algebras.size());
    parallel_for(algebras.size(), o.threads, [&](std::size_t i) { all[i] = compute_entry(algebras[i], o); });
    return all;
}

inline std::vector<Check> compare_all(const std::vector<Computed>& all, const GoldenBundle& gb, const VerifyOptions& o) {
    std::vector<Check> out;
    for (const auto& c : all) {
        auto v = compare_entry(c, gb, o);
        out.insert(out.end(), v.begin(), v.end());
    }
    auto gl = compare_global(all, gb, o);
    out.insert(out.end(), gl.begin(), gl.end());
    return out;
}

inline VerifyReport run_verify(const VerifyOptions& o, const GoldenBundle& gb) {
    auto all = compute_all(o);
    VerifyReport rep;
    for (const auto& c : all) rep.checks.insert(rep.checks.end(), c.checks.begin(), c.checks.end());
    auto cmp = compare_all(all, gb, o);
    rep.checks.insert(rep.checks.end(), cmp.begin(), cmp.end());
    return rep;
}

inline json report_json(const VerifyReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"module", c.module}, {"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
    return {{"checks", checks}, {"total", rep.checks.size()}, {"failed", rep.failed()}};
}

}  // namespace conicfans
