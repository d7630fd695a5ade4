#pragma once

// Batch front end: one subcommand per library operation, JSON reports with a
// manifest echo, exit codes 0 (verified), 1 (certified negative outcome),
// 2 (usage/input error), 3 (internal inconsistency).

#include <convind/io.hpp>
#include <convind/parallel.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace convind::cli {

struct Manifest {
    std::string command;
    std::vector<std::string> inputs;
    io::json parameters = io::json::object();
    std::string output;
};

inline io::json manifest_json(const Manifest& m) {
    io::json j;
    j["command"] = m.command;
    j["inputs"] = m.inputs;
    j["parameters"] = m.parameters;
    j["output"] = m.output;
    return j;
}

inline io::json make_report(const Manifest& m, const std::string& kind, io::json payload) {
    payload["schema_version"] = io::kSchemaVersion;
    payload["kind"] = kind;
    payload["manifest"] = manifest_json(m);
    return payload;
}

inline long long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact-arithmetic toolkit for convexly independent midpoint systems"};
    app.require_subcommand(1);

    // Shared option storage; each subcommand binds only the flags it declares.
    std::string in_path, p_path, q_path, ball_path, out_path, csv_path;
    std::string delta_str = "1/4", lambda_str, eps_str = "1/10";
    int k = 1, m = 1, c = 1, cap = 18, halve_budget = 30, max_m = 6, count = 0, jobs = 0;
    long long search_budget = 100000;
    std::uint64_t seed = 0x5EEDBA5Eull;

    int code = 0;

    auto add_jobs = [&](CLI::App* sub) {
        sub->add_option("--jobs", jobs, "worker threads (default: CONVIND_JOBS or all cores)");
    };
    auto apply_jobs = [&] {
        if (jobs > 0) default_jobs_slot() = jobs;
    };
    auto emit = [&](const io::json& report) {
        out << report.dump(2) << '\n';
        if (!out_path.empty()) io::save_json(out_path, report);
    };
    auto params = [&](std::initializer_list<std::pair<const char*, io::json>> kv) {
        io::json j = io::json::object();
        for (const auto& [key, val] : kv) j[key] = val;
        if (jobs > 0) j["jobs"] = jobs;
        return j;
    };

    // ---------------------------------------------------------- constructions

    auto* sc_construct = app.add_subcommand("construct-cubearc",
                                            "three k-point circular arcs near cube edge midpoints");
    sc_construct->add_option("--k", k, "points per arc")->required();
    sc_construct->add_option("--delta", delta_str, "arc half-width (rational)");
    sc_construct->add_option("--out", out_path, "report file");
    sc_construct->callback([&] {
        Rational delta = parse_rational(delta_str);
        CubeArcs arcs = cube_arc_points(k, delta);
        Manifest man{"construct-cubearc", {}, params({{"k", k}, {"delta", delta_str}}), out_path};
        io::json j;
        j["k"] = k;
        j["delta"] = io::rational_json(delta);
        io::json arr = io::json::array();
        for (const PointSet& a : arcs.arcs) arr.push_back(io::point_set_json(a));
        j["arcs"] = std::move(arr);
        j["midpoints"] = io::point_set_json(arcs.midpoints);
        j["midpoint_count"] = arcs.midpoints.size();
        emit(make_report(man, "cube_arcs", std::move(j)));
    });

    auto* sc_verify = app.add_subcommand("verify-cubearc",
                                         "certify the 3k^2 cross-arc midpoints convexly independent");
    sc_verify->add_option("--k", k, "points per arc")->required();
    sc_verify->add_option("--delta0", delta_str, "initial arc half-width (rational)");
    sc_verify->add_option("--budget", halve_budget, "halving budget");
    sc_verify->add_option("--out", out_path, "report file");
    add_jobs(sc_verify);
    sc_verify->callback([&] {
        apply_jobs();
        CubeArcVerification v = verify_cube_arc(k, parse_rational(delta_str), halve_budget, jobs);
        Manifest man{"verify-cubearc",
                     {},
                     params({{"k", k}, {"delta0", delta_str}, {"budget", halve_budget}}),
                     out_path};
        emit(make_report(man, "cube_arc_verification", io::cube_arc_verification_json(v)));
    });

    // -------------------------------------------------------------- extremal

    auto* sc_e = app.add_subcommand("compute-e", "largest convexly independent midpoint system E(S)");
    sc_e->add_option("--in", in_path, "point set file")->required();
    sc_e->add_option("--cap", cap, "brute-force size cap");
    sc_e->add_option("--out", out_path, "report file");
    add_jobs(sc_e);
    sc_e->callback([&] {
        apply_jobs();
        ExtremalResult r = compute_E(io::load_point_set(in_path), cap);
        Manifest man{"compute-e", {in_path}, params({{"cap", cap}}), out_path};
        io::json j = io::extremal_json(r);
        j["operation"] = "E";
        emit(make_report(man, "extremal_report", std::move(j)));
    });

    auto* sc_m = app.add_subcommand("compute-m",
                                    "largest convexly independent subset of a Minkowski sum");
    sc_m->add_option("--p", p_path, "first point set file")->required();
    sc_m->add_option("--q", q_path, "second point set file")->required();
    sc_m->add_option("--cap", cap, "brute-force size cap");
    sc_m->add_option("--out", out_path, "report file");
    add_jobs(sc_m);
    sc_m->callback([&] {
        apply_jobs();
        ExtremalResult r = compute_M(io::load_point_set(p_path), io::load_point_set(q_path), cap);
        Manifest man{"compute-m", {p_path, q_path}, params({{"cap", cap}}), out_path};
        io::json j = io::extremal_json(r);
        j["operation"] = "M";
        emit(make_report(man, "extremal_report", std::move(j)));
    });

    auto* sc_ecirc = app.add_subcommand("compute-ecirc",
                                        "largest concyclic midpoint system (planar)");
    sc_ecirc->add_option("--in", in_path, "point set file")->required();
    sc_ecirc->add_option("--cap", cap, "size cap");
    sc_ecirc->add_option("--out", out_path, "report file");
    sc_ecirc->callback([&] {
        ExtremalResult r = compute_E_circ(io::load_point_set(in_path), cap);
        Manifest man{"compute-ecirc", {in_path}, params({{"cap", cap}}), out_path};
        io::json j = io::extremal_json(r);
        j["operation"] = "E_circ";
        emit(make_report(man, "extremal_report", std::move(j)));
    });

    // ----------------------------------------------------------------- norms

    auto* sc_census = app.add_subcommand("census",
                                         "unit / nonparallel-unit / diameter pair counts");
    sc_census->add_option("--in", in_path, "point set file")->required();
    sc_census->add_option("--ball", ball_path, "unit ball vertex file (default: euclidean)");
    sc_census->add_option("--out", out_path, "report file");
    sc_census->add_option("--csv", csv_path, "also write a one-row CSV table");
    add_jobs(sc_census);
    sc_census->callback([&] {
        apply_jobs();
        auto t0 = std::chrono::steady_clock::now();
        PointSet pts = io::load_point_set(in_path);
        DistanceCensus census;
        if (ball_path.empty()) {
            census = distance_census(pts);
        } else {
            UnitBallCertificate ball = make_unit_ball(io::load_point_set(ball_path));
            census = distance_census(pts, &ball);
        }
        Manifest man{"census",
                     ball_path.empty() ? std::vector<std::string>{in_path}
                                       : std::vector<std::string>{in_path, ball_path},
                     params({}),
                     out_path};
        emit(make_report(man, "census_report", io::census_json(census)));
        if (!csv_path.empty()) {
            io::CensusRow row{census.n, census.unit_pairs, census.unit_directions,
                              census.diameter_pairs, census.diameter_value, elapsed_ms(t0)};
            std::ofstream f(csv_path);
            if (!f) throw std::invalid_argument("cannot open for writing: " + csv_path);
            f << io::census_csv({row});
        }
    });

    auto* sc_averify = app.add_subcommand("antipodal-verify",
                                          "check strict antipodality of a family of point sets");
    sc_averify->add_option("--in", in_path, "family file with a \"sets\" array")->required();
    sc_averify->add_option("--out", out_path, "report file");
    add_jobs(sc_averify);
    sc_averify->callback([&] {
        apply_jobs();
        AntipodalCheck chk = verify_strict_antipodality(io::load_point_sets(in_path));
        Manifest man{"antipodal-verify", {in_path}, params({}), out_path};
        io::json j;
        j["antipodal"] = chk.antipodal;
        j["witness_count"] = static_cast<long long>(chk.family.witnesses.size());
        if (chk.counterexample) {
            const auto& ce = *chk.counterexample;
            j["counterexample"] = {ce[0], ce[1], ce[2], ce[3]};
        }
        emit(make_report(man, "antipodal_check", std::move(j)));
        if (!chk.antipodal) code = 1;
    });

    auto* sc_abuild = app.add_subcommand("antipodal-build",
                                         "three strictly antipodal m-point sets in R^3");
    sc_abuild->add_option("--m", m, "points per set")->required();
    sc_abuild->add_option("--seed", seed, "perturbation seed");
    sc_abuild->add_option("--out", out_path, "family file (reloadable by antipodal-verify)");
    add_jobs(sc_abuild);
    sc_abuild->callback([&] {
        apply_jobs();
        AntipodalTripleResult r = antipodal_triple_3d(m, seed);
        Manifest man{"antipodal-build", {}, params({{"m", m}, {"seed", seed}}), ""};
        man.output = out_path;
        io::json report = make_report(man, "antipodal_triple", io::antipodal_triple_json(r));
        out << report.dump(2) << '\n';
        if (!out_path.empty())
            io::save_json(out_path,
                          io::wrap_file("antipodal_family", io::antipodal_family_json(r.family)));
    });

    auto* sc_thm3 = app.add_subcommand("theorem3",
                                       "norm with 3m^2 unit = diameter = nonparallel pairs on 3m points");
    sc_thm3->add_option("--m", m, "points per arc")->required();
    sc_thm3->add_option("--seed", seed, "perturbation seed");
    sc_thm3->add_option("--out", out_path, "report file");
    add_jobs(sc_thm3);
    sc_thm3->callback([&] {
        apply_jobs();
        Theorem3Report r = theorem3_census(m, seed);
        Manifest man{"theorem3", {}, params({{"m", m}, {"seed", seed}}), out_path};
        emit(make_report(man, "theorem3_report", io::theorem3_json(r)));
    });

    auto* sc_cover = app.add_subcommand("covering",
                                        "dense low-diameter subset via a translate grid");
    sc_cover->add_option("--in", in_path, "point set file")->required();
    sc_cover->add_option("--lambda", lambda_str, "diameter shrink factor in (0,1), rational")
        ->required();
    sc_cover->add_option("--ball", ball_path, "unit ball vertex file (default: euclidean)");
    sc_cover->add_option("--out", out_path, "report file");
    add_jobs(sc_cover);
    sc_cover->callback([&] {
        apply_jobs();
        PointSet pts = io::load_point_set(in_path);
        Rational lambda = parse_rational(lambda_str);
        CoveringExtraction ex;
        if (ball_path.empty()) {
            ex = covering_extract(pts, lambda);
        } else {
            UnitBallCertificate ball = make_unit_ball(io::load_point_set(ball_path));
            ex = covering_extract(pts, lambda, &ball);
        }
        Manifest man{"covering",
                     ball_path.empty() ? std::vector<std::string>{in_path}
                                       : std::vector<std::string>{in_path, ball_path},
                     params({{"lambda", lambda_str}}),
                     out_path};
        emit(make_report(man, "covering_report", io::covering_json(ex)));
    });

    // ------------------------------------------------------------ reductions

    auto* sc_c1 = app.add_subcommand("reduce-claim1",
                                     "Minkowski-sum witness to midpoint pairs on P and a translate of Q");
    sc_c1->add_option("--p", p_path, "first point set file")->required();
    sc_c1->add_option("--q", q_path, "second point set file")->required();
    sc_c1->add_option("--cap", cap, "brute-force size cap");
    sc_c1->add_option("--out", out_path, "report file");
    add_jobs(sc_c1);
    sc_c1->callback([&] {
        apply_jobs();
        Claim1Witness w = reduce_claim1(io::load_point_set(p_path), io::load_point_set(q_path), cap);
        Manifest man{"reduce-claim1", {p_path, q_path}, params({{"cap", cap}}), out_path};
        emit(make_report(man, "claim1_report", io::claim1_json(w)));
    });

    auto* sc_c2 = app.add_subcommand("reduce-claim2",
                                     "unit-distance witness in a constructed planar norm");
    sc_c2->add_option("--p", p_path, "first point set file")->required();
    sc_c2->add_option("--q", q_path, "second point set file")->required();
    sc_c2->add_option("--cap", cap, "brute-force size cap");
    sc_c2->add_option("--budget", halve_budget, "translate search budget");
    sc_c2->add_option("--out", out_path, "report file");
    add_jobs(sc_c2);
    sc_c2->callback([&] {
        apply_jobs();
        Claim2Witness w = reduce_claim2(io::load_point_set(p_path), io::load_point_set(q_path),
                                        cap, halve_budget);
        Manifest man{"reduce-claim2",
                     {p_path, q_path},
                     params({{"cap", cap}, {"budget", halve_budget}}),
                     out_path};
        emit(make_report(man, "claim2_report", io::claim2_json(w)));
    });

    auto* sc_c3 = app.add_subcommand("reduce-claim3",
                                     "seeded halving: a quarter-size block of M(P,Q)");
    sc_c3->add_option("--p", p_path, "first point set file")->required();
    sc_c3->add_option("--q", q_path, "second point set file")->required();
    sc_c3->add_option("--seed", seed, "shuffle seed");
    sc_c3->add_option("--cap", cap, "brute-force size cap");
    sc_c3->add_option("--out", out_path, "report file");
    add_jobs(sc_c3);
    sc_c3->callback([&] {
        apply_jobs();
        Claim3Witness w = reduce_claim3(io::load_point_set(p_path), io::load_point_set(q_path),
                                        seed, cap);
        Manifest man{"reduce-claim3",
                     {p_path, q_path},
                     params({{"seed", seed}, {"cap", cap}}),
                     out_path};
        emit(make_report(man, "claim3_report", io::claim3_json(w)));
    });

    auto* sc_eq = app.add_subcommand("equivalence",
                                     "M(P,Q) with claim-1 and (planar) claim-2 witnesses");
    sc_eq->add_option("--p", p_path, "first point set file")->required();
    sc_eq->add_option("--q", q_path, "second point set file")->required();
    sc_eq->add_option("--cap", cap, "brute-force size cap");
    sc_eq->add_option("--out", out_path, "report file");
    add_jobs(sc_eq);
    sc_eq->callback([&] {
        apply_jobs();
        EquivalenceReport r =
            equivalence_report(io::load_point_set(p_path), io::load_point_set(q_path), cap);
        Manifest man{"equivalence", {p_path, q_path}, params({{"cap", cap}}), out_path};
        emit(make_report(man, "equivalence_report", io::equivalence_json(r)));
    });

    // ------------------------------------------------------------- forbidden

    auto* sc_refute = app.add_subcommand("refute-k22222",
                                         "violation certificate for five two-point classes");
    sc_refute->add_option("--in", in_path, "five_pair_config file");
    sc_refute->add_option("--count", count, "run a seeded random suite instead");
    sc_refute->add_option("--seed", seed, "suite seed");
    sc_refute->add_option("--out", out_path, "report file");
    add_jobs(sc_refute);
    sc_refute->callback([&] {
        apply_jobs();
        if (in_path.empty() == (count <= 0))
            throw std::invalid_argument("refute-k22222: pass exactly one of --in or --count");
        if (!in_path.empty()) {
            ViolationCertificate cert = refute_K22222(io::load_five_pair(in_path), jobs);
            Manifest man{"refute-k22222", {in_path}, params({}), out_path};
            emit(make_report(man, "violation_certificate", io::violation_certificate_json(cert)));
            return;
        }
        Rng root(seed);
        io::json violating = io::json::array();
        for (int i = 0; i < count; ++i) {
            Rng rng = root.fork(static_cast<std::uint64_t>(i));
            FivePairConfig cfg;
            for (int cls = 0; cls < 5; ++cls) {
                cfg.classes[cls].dimension = 3;
                cfg.classes[cls].push_back(rng.point(3, 8, 4));
                cfg.classes[cls].push_back(rng.point(3, 8, 4));
            }
            violating.push_back(refute_K22222(cfg, jobs).violating);
        }
        Manifest man{"refute-k22222", {}, params({{"count", count}, {"seed", seed}}), out_path};
        io::json j;
        j["count"] = count;
        j["verified"] = count;
        j["violating_indices"] = std::move(violating);
        emit(make_report(man, "violation_suite", std::move(j)));
    });

    auto* sc_halman = app.add_subcommand("halman5",
                                         "five independent points: midpoints must be dependent");
    sc_halman->add_option("--in", in_path, "point set file (5 points in R^3)");
    sc_halman->add_option("--count", count, "run a seeded random suite instead");
    sc_halman->add_option("--seed", seed, "suite seed");
    sc_halman->add_option("--out", out_path, "report file");
    add_jobs(sc_halman);
    sc_halman->callback([&] {
        apply_jobs();
        if (in_path.empty() == (count <= 0))
            throw std::invalid_argument("halman5: pass exactly one of --in or --count");
        if (!in_path.empty()) {
            Halman5Result r = halman5_check(io::load_point_set(in_path), jobs);
            Manifest man{"halman5", {in_path}, params({}), out_path};
            emit(make_report(man, "halman5_report", io::halman5_json(r)));
            return;
        }
        Rng root(seed);
        int passed = 0;
        for (int i = 0; i < count; ++i) {
            Rng rng = root.fork(static_cast<std::uint64_t>(i));
            PointSet ps;
            bool found = false;
            for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
                ps = PointSet{};
                ps.dimension = 3;
                for (int v = 0; v < 5; ++v) ps.push_back(rng.point(3, 8, 4));
                found = ps.all_distinct() &&
                        convexly_independent(ps, jobs).verdict ==
                            ConvexPositionCertificate::Verdict::independent;
            }
            if (!found)
                throw InconsistencyError("halman5 suite: could not sample an independent 5-tuple");
            Halman5Result r = halman5_check(ps, jobs);
            if (!r.skipped) ++passed;
        }
        Manifest man{"halman5", {}, params({{"count", count}, {"seed", seed}}), out_path};
        io::json j;
        j["count"] = count;
        j["passed"] = passed;
        emit(make_report(man, "halman5_suite", std::move(j)));
        if (passed != count) code = 3;
    });

    auto* sc_search = app.add_subcommand("conjecture-search",
                                         "seeded search for four classes with independent midpoints");
    sc_search->add_option("--c", c, "points per class")->required();
    sc_search->add_option("--epsilon", eps_str, "class diameter bound (rational)");
    sc_search->add_option("--budget", search_budget, "total margin evaluations");
    sc_search->add_option("--seed", seed, "search seed");
    sc_search->add_option("--out", out_path, "report file");
    add_jobs(sc_search);
    sc_search->callback([&] {
        apply_jobs();
        SearchReport r = conjecture_search(c, parse_rational(eps_str), search_budget, seed, jobs);
        Manifest man{"conjecture-search",
                     {},
                     params({{"c", c},
                             {"epsilon", eps_str},
                             {"budget", search_budget},
                             {"seed", seed}}),
                     out_path};
        emit(make_report(man, "search_report", io::search_report_json(r)));
    });

    // ----------------------------------------------------------------- bench

    auto* sc_bench = app.add_subcommand("bench", "census scaling table over m = 1..max-m");
    sc_bench->add_option("--max-m", max_m, "largest arc size");
    sc_bench->add_option("--seed", seed, "perturbation seed");
    sc_bench->add_option("--out", csv_path, "CSV output file (default: stdout)");
    add_jobs(sc_bench);
    sc_bench->callback([&] {
        apply_jobs();
        std::vector<io::CensusRow> rows;
        for (int mm = 1; mm <= max_m; ++mm) {
            auto t0 = std::chrono::steady_clock::now();
            Theorem3Report r = theorem3_census(mm, seed);
            rows.push_back({r.census.n, r.census.unit_pairs, r.census.unit_directions,
                            r.census.diameter_pairs, r.census.diameter_value, elapsed_ms(t0)});
        }
        std::string table = io::census_csv(rows);
        if (csv_path.empty()) {
            out << table;
        } else {
            std::ofstream f(csv_path);
            if (!f) throw std::invalid_argument("cannot open for writing: " + csv_path);
            f << table;
        }
    });

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int cli_code = app.exit(e, out, err);
        return cli_code == 0 ? 0 : 2;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << '\n';
        return 1;
    } catch (const InconsistencyError& e) {
        err << "inconsistency: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const io::json::exception& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
    return code;
}

}  // namespace convind::cli
