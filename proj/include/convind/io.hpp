#pragma once

// Structured-text (JSON) serialization for point sets, certificates, and
// reports, plus a small CSV emitter for census tables. Rationals are always
// encoded as "num/den" strings so every file round-trips exactly.

#include <convind/constructions.hpp>
#include <convind/extremal.hpp>
#include <convind/forbidden.hpp>
#include <convind/norms.hpp>
#include <convind/point.hpp>
#include <convind/predicates.hpp>
#include <convind/rational.hpp>
#include <convind/reductions.hpp>
#include <convind/separation.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace convind::io {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------- scalars

inline json rational_json(const Rational& r) { return rational_to_string(r); }

inline Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("expected a \"num/den\" string");
    return parse_rational(j.get<std::string>());
}

inline json integer_json(const Integer& z) { return z.get_str(); }

// ----------------------------------------------------------------- points

inline json vec_json(const Vec& v) {
    json arr = json::array();
    for (int i = 0; i < v.dim(); ++i) arr.push_back(rational_json(v[i]));
    return arr;
}

inline Vec vec_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a coordinate array");
    Vec v(static_cast<int>(j.size()));
    for (int i = 0; i < v.dim(); ++i) v[i] = rational_from_json(j[i]);
    return v;
}

inline json point_set_json(const PointSet& s) {
    json j;
    j["dimension"] = s.dimension;
    json pts = json::array();
    for (const Vec& p : s.points) pts.push_back(vec_json(p));
    j["points"] = std::move(pts);
    return j;
}

inline PointSet point_set_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dimension") || !j.contains("points"))
        throw std::invalid_argument("point set needs \"dimension\" and \"points\"");
    PointSet s;
    s.dimension = j.at("dimension").get<int>();
    if (s.dimension <= 0) throw std::invalid_argument("dimension must be positive");
    for (const json& p : j.at("points")) s.push_back(vec_from_json(p));
    return s;
}

// ------------------------------------------------------------------ files

inline json wrap_file(const std::string& kind, json payload) {
    payload["schema_version"] = kSchemaVersion;
    payload["kind"] = kind;
    return payload;
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

inline PointSet load_point_set(const std::string& path) {
    try {
        return point_set_from_json(load_json(path));
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

inline void save_point_set(const std::string& path, const PointSet& s) {
    save_json(path, wrap_file("point_set", point_set_json(s)));
}

// A family file holds several point sets of one dimension under "sets".
inline std::vector<PointSet> point_sets_from_json(const json& j) {
    if (!j.is_object() || !j.contains("sets"))
        throw std::invalid_argument("family file needs a \"sets\" array");
    std::vector<PointSet> sets;
    for (const json& e : j.at("sets")) sets.push_back(point_set_from_json(e));
    return sets;
}

inline std::vector<PointSet> load_point_sets(const std::string& path) {
    try {
        return point_sets_from_json(load_json(path));
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

inline json point_sets_json(const std::vector<PointSet>& sets) {
    json arr = json::array();
    for (const PointSet& s : sets) arr.push_back(point_set_json(s));
    json j;
    j["sets"] = std::move(arr);
    return j;
}

inline FivePairConfig five_pair_from_json(const json& j) {
    std::vector<PointSet> sets = point_sets_from_json(j);
    if (sets.size() != 5) throw std::invalid_argument("five_pair_config needs exactly 5 classes");
    FivePairConfig cfg;
    for (int i = 0; i < 5; ++i) cfg.classes[i] = std::move(sets[i]);
    return cfg;
}

inline FivePairConfig load_five_pair(const std::string& path) {
    try {
        return five_pair_from_json(load_json(path));
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

inline json five_pair_json(const FivePairConfig& cfg) {
    return point_sets_json({cfg.classes.begin(), cfg.classes.end()});
}

// ----------------------------------------------------------- certificates

inline json functional_json(const LinearFunctional& f) {
    json j;
    j["normal"] = vec_json(f.normal);
    j["offset"] = rational_json(f.offset);
    return j;
}

inline json combination_json(const std::vector<std::pair<int, Rational>>& terms) {
    json arr = json::array();
    for (const auto& [idx, coeff] : terms) arr.push_back({idx, rational_json(coeff)});
    return arr;
}

inline json certificate_json(const ConvexPositionCertificate& cert) {
    json j;
    j["verdict"] = cert.verdict == ConvexPositionCertificate::Verdict::independent
                       ? "independent"
                       : "dependent";
    json wit = json::object();
    for (const auto& [idx, f] : cert.witnesses) wit[std::to_string(idx)] = functional_json(f);
    j["witnesses"] = std::move(wit);
    if (cert.violation) {
        json v;
        v["point_index"] = cert.violation->point_index;
        v["coefficients"] = combination_json(cert.violation->coefficients);
        j["violation"] = std::move(v);
    }
    return j;
}

inline json circle_json(const Circle& c) {
    json j;
    j["center"] = vec_json(c.center);
    j["radius_squared"] = rational_json(c.radius_squared);
    return j;
}

inline json index_pairs_json(const std::vector<IndexPair>& pairs) {
    json arr = json::array();
    for (const IndexPair& p : pairs) arr.push_back({p.a, p.b});
    return arr;
}

inline json int_pairs_json(const std::vector<std::pair<int, int>>& pairs) {
    json arr = json::array();
    for (const auto& [a, b] : pairs) arr.push_back({a, b});
    return arr;
}

// ---------------------------------------------------------------- reports

inline json extremal_json(const ExtremalResult& r) {
    json j;
    j["value"] = r.value;
    j["evaluated"] = point_set_json(r.evaluated);
    j["selected"] = r.selected;
    j["witness_pairs"] = index_pairs_json(r.witness_pairs);
    j["certificate"] = certificate_json(r.certificate);
    if (r.circle) j["circle"] = circle_json(*r.circle);
    return j;
}

inline json census_json(const DistanceCensus& c) {
    json j;
    j["n"] = c.n;
    j["metric"] = c.euclidean ? "euclidean" : "gauge";
    j["unit_pairs"] = c.unit_pairs;
    j["unit_directions"] = c.unit_directions;
    j["diameter_pairs"] = c.diameter_pairs;
    j["diameter_value"] = rational_json(c.diameter_value);
    return j;
}

inline json unit_ball_json(const UnitBallCertificate& b) {
    json j;
    j["vertices"] = point_set_json(b.vertices);
    j["antipode"] = b.antipode;
    j["padding_count"] = b.padding_count;
    j["certificate"] = certificate_json(b.certificate);
    return j;
}

inline json antipodal_family_json(const AntipodalFamily& f) {
    json j = point_sets_json(f.sets);
    json wit = json::object();
    for (const auto& [key, fun] : f.witnesses) {
        std::ostringstream name;
        name << key[0] << ',' << key[1] << ',' << key[2] << ',' << key[3];
        wit[name.str()] = functional_json(fun);
    }
    j["witnesses"] = std::move(wit);
    return j;
}

inline json covering_json(const CoveringExtraction& c) {
    json j;
    j["selected_indices"] = c.selected_indices;
    j["selected"] = point_set_json(c.selected);
    j["lambda"] = rational_json(c.lambda);
    j["cell_side"] = rational_json(c.cell_side);
    json cell = json::array();
    for (const Integer& z : c.cell) cell.push_back(integer_json(z));
    j["cell"] = std::move(cell);
    j["nonempty_cells"] = c.nonempty_cells;
    j["bound"] = c.bound;
    j["diameter_value"] = rational_json(c.diameter_value);
    j["metric"] = c.euclidean ? "euclidean" : "gauge";
    return j;
}

inline json cube_arc_verification_json(const CubeArcVerification& v) {
    json j;
    j["k"] = v.k;
    j["delta"] = rational_json(v.delta);
    j["halvings"] = v.halvings;
    json arcs = json::array();
    for (const PointSet& a : v.arcs.arcs) arcs.push_back(point_set_json(a));
    j["arcs"] = std::move(arcs);
    j["midpoints"] = point_set_json(v.arcs.midpoints);
    j["midpoint_count"] = v.arcs.midpoints.size();
    j["certificate"] = certificate_json(v.certificate);
    return j;
}

inline json antipodal_triple_json(const AntipodalTripleResult& r) {
    json j;
    j["m"] = r.m;
    j["delta"] = rational_json(r.delta);
    j["halvings"] = r.halvings;
    j["perturbed"] = r.perturbed;
    j["family"] = antipodal_family_json(r.family);
    j["direction_count"] = r.direction_count;
    return j;
}

inline json theorem3_json(const Theorem3Report& r) {
    json j;
    j["m"] = r.m;
    j["triple"] = antipodal_triple_json(r.triple);
    j["ball"] = unit_ball_json(r.ball);
    j["points"] = point_set_json(r.points);
    j["census"] = census_json(r.census);
    j["expected"] = r.expected;
    j["total_pairs"] = r.total_pairs;
    return j;
}

inline json claim1_json(const Claim1Witness& w) {
    json j;
    j["value"] = w.value;
    j["m_result"] = extremal_json(w.m_result);
    j["offset"] = vec_json(w.offset);
    j["r"] = point_set_json(w.r);
    j["pairs"] = int_pairs_json(w.pairs);
    j["midpoints"] = point_set_json(w.midpoints);
    j["certificate"] = certificate_json(w.certificate);
    return j;
}

inline json claim2_json(const Claim2Witness& w) {
    json j;
    j["value"] = w.value;
    j["bound"] = w.bound;
    j["m_value"] = w.m_result.value;
    j["chain"] = w.chain;
    j["tau"] = vec_json(w.tau);
    j["tau_attempts"] = w.tau_attempts;
    j["ball"] = unit_ball_json(w.ball);
    j["r"] = point_set_json(w.r);
    j["unit_pairs"] = int_pairs_json(w.unit_pairs);
    j["census"] = census_json(w.census);
    return j;
}

inline json claim3_json(const Claim3Witness& w) {
    json j;
    j["seed"] = w.seed;
    j["m_value"] = w.m_result.value;
    j["p1"] = w.p1;
    j["p2"] = w.p2;
    j["q1"] = w.q1;
    j["q2"] = w.q2;
    j["labels"] = int_pairs_json(w.labels);
    json amb = json::array();
    for (bool b : w.ambiguous) amb.push_back(b);
    j["ambiguous"] = std::move(amb);
    j["block"] = {w.block.first, w.block.second};
    j["block_members"] = w.block_members;
    j["block_count"] = w.block_count;
    j["bound"] = w.bound;
    j["certificate"] = certificate_json(w.certificate);
    return j;
}

inline json equivalence_json(const EquivalenceReport& r) {
    json j;
    j["m_value"] = r.m_result.value;
    j["claim1"] = claim1_json(r.claim1);
    if (r.claim2) j["claim2"] = claim2_json(*r.claim2);
    return j;
}

inline json violation_certificate_json(const ViolationCertificate& c) {
    json j;
    j["config"] = five_pair_json(c.config);
    json keys = json::array();
    for (const auto& k : c.keys) keys.push_back({k[0], k[1], k[2], k[3]});
    j["keys"] = std::move(keys);
    j["midpoints"] = point_set_json(c.midpoints);
    j["violating"] = c.violating;
    j["combination"] = combination_json(c.combination);
    return j;
}

inline json proof_path_json(const ProofPathTrace& t) {
    json j;
    j["representatives"] = point_set_json(t.representatives);
    json vols = json::array();
    for (const Rational& v : t.volumes) vols.push_back(rational_json(v));
    j["volumes"] = std::move(vols);
    j["leftover"] = t.leftover;
    json c5c = json::array(), c5pc = json::array();
    for (const Rational& r : t.c5_coefficients) c5c.push_back(rational_json(r));
    for (const Rational& r : t.c5p_coefficients) c5pc.push_back(rational_json(r));
    j["c5_coefficients"] = std::move(c5c);
    j["c5p_coefficients"] = std::move(c5pc);
    j["facet"] = {t.facet[0], t.facet[1], t.facet[2]};
    j["t"] = rational_json(t.t);
    j["exit_point"] = vec_json(t.exit_point);
    j["witness"] = point_set_json(t.witness);
    j["witness_combination"] = combination_json(t.witness_combination);
    j["witness_certificate"] = certificate_json(t.witness_certificate);
    return j;
}

inline json halman5_json(const Halman5Result& r) {
    json j;
    j["points"] = point_set_json(r.points);
    j["points_certificate"] = certificate_json(r.points_certificate);
    j["skipped"] = r.skipped;
    j["note"] = r.note;
    if (!r.skipped) {
        j["midpoint_pairs"] = index_pairs_json(r.midpoint_pairs);
        j["midpoints"] = point_set_json(r.midpoints);
        j["midpoints_certificate"] = certificate_json(r.midpoints_certificate);
    }
    return j;
}

inline json search_report_json(const SearchReport& r) {
    json j;
    j["c"] = r.c;
    j["epsilon"] = rational_json(r.epsilon);
    j["budget"] = r.budget;
    j["seed"] = r.seed;
    j["iterations"] = r.iterations;
    j["restarts"] = r.restarts;
    j["best_margin"] = r.best_margin;
    j["winning_restart"] = r.winning_restart;
    if (r.best) j["best"] = point_sets_json(*r.best);
    if (r.exact_margin) j["exact_margin"] = rational_json(*r.exact_margin);
    if (r.verdict) j["verdict"] = certificate_json(*r.verdict);
    j["found"] = r.found;
    j["note"] = r.note;
    return j;
}

// ------------------------------------------------------------------- CSV

struct CensusRow {
    int n = 0;
    long long unit_pairs = 0;
    long long unit_directions = 0;
    long long diameter_pairs = 0;
    Rational diameter;
    long long runtime_ms = 0;
};

inline std::string census_csv(const std::vector<CensusRow>& rows) {
    std::ostringstream out;
    out << "n,U,W,D,diameter,runtime_ms\n";
    for (const CensusRow& r : rows) {
        out << r.n << ',' << r.unit_pairs << ',' << r.unit_directions << ','
            << r.diameter_pairs << ',' << rational_to_string(r.diameter) << ','
            << r.runtime_ms << '\n';
    }
    return out.str();
}

}  // namespace convind::io
