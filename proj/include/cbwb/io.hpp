#pragma once

// JSON serialization of library results (nlohmann/json). Objects are key-sorted,
// so identical inputs give byte-identical output.

#include "brst.hpp"
#include "characters.hpp"
#include "genus.hpp"

#include <json.hpp>

namespace cbwb {

using Json = nlohmann::json;

inline Json to_json(const Weight& w)
{
    Json a = Json::array();
    for (const auto& q : w.coords)
        a.push_back(q.str());
    return a;
}

inline Weight weight_from_json(const Json& j)
{
    Weight w(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        w[i] = j[i].is_string() ? parse_rational(j[i].get<std::string>()) : Rational(j[i].get<long long>());
    return w;
}

inline Json to_json(Truncation t) { return Json{{"N", t.N}, {"D", t.D}}; }

inline Json to_json(const CharSeries& s)
{
    Json terms = Json::array();
    for (const auto& [k, c] : s.terms())
        terms.push_back(Json{{"depth", k.depth_vector(s.rank())}, {"n", k.n()}, {"c", c.str()}});
    return Json{{"type", s.root_system().type().name()},
                {"leading", to_json(s.leading())},
                {"trunc", to_json(s.trunc())},
                {"terms", terms}};
}

inline CharSeries charseries_from_json(const Json& j)
{
    RootSystem rs = build_root_system(j.at("type").get<std::string>());
    CharSeries s(rs, weight_from_json(j.at("leading")), {j.at("trunc").at("N").get<int>(), j.at("trunc").at("D").get<int>()});
    for (const auto& t : j.at("terms")) {
        auto depth = t.at("depth").get<std::vector<int>>();
        if (static_cast<int>(depth.size()) != rs.rank())
            throw InvalidInput("term depth has the wrong length");
        if (!s.in_window(depth, t.at("n").get<int>()))
            throw InvalidInput("term outside the truncation window");
        s.add(depth, t.at("n").get<int>(), Integer(t.at("c").get<std::string>()));
    }
    return s;
}

inline Json to_json(const QSeries& q)
{
    Json a = Json::array();
    for (const auto& c : q.coeffs)
        a.push_back(c.str());
    return a;
}

inline Json to_json(const WindowComparison& w)
{
    Json j{{"equal", w.equal}, {"anchor", to_json(w.anchor)}, {"window", to_json(w.window)}};
    if (w.first)
        j["first_discrepancy"] = Json{{"depth", w.first->depth},
                                      {"n", w.first->n},
                                      {"weight", to_json(w.first->weight)},
                                      {"lhs", w.first->lhs.str()},
                                      {"rhs", w.first->rhs.str()}};
    return j;
}

inline Json to_json(const ShiftMultiset& s)
{
    Json j = Json::object();
    for (const auto& [i, v] : s)
        j[std::to_string(i)] = v;
    return j;
}

inline Json to_json(const FiniteCharacter& ch)
{
    Json w = Json::array();
    for (const auto& [mu, m] : ch.multiplicities)
        w.push_back(Json{{"weight", to_json(mu)}, {"multiplicity", m.str()}});
    return Json{{"highest", to_json(ch.highest)}, {"dimension", ch.dimension.str()}, {"weights", w}};
}

inline Json to_json(const DenominatorCheck& d)
{
    return Json{{"claim", "sum_w sign(w) q^<nu0 - w.nu0, rho^vee> == prod_{alpha>0} (1 - q^<nu0 + rho, alpha^vee>)"},
                {"pass", d.equal},
                {"alternating_sum", d.alternating_sum.str()},
                {"product", d.product.str()}};
}

inline Json to_json(const BwbReport& r)
{
    Json tables = Json::object();
    for (const auto& [n, rows] : r.tables) {
        Json a = Json::array();
        for (const auto& row : rows)
            a.push_back(Json{{"weight", to_json(row.weight)}, {"euler", row.lhs.str()}, {"assembled", row.rhs.str()}});
        tables[std::to_string(n)] = a;
    }
    Json j{{"claim", r.claim},
           {"nu0", to_json(r.nu0)},
           {"window", to_json(r.window)},
           {"pass", r.pass},
           {"paths", to_json(r.paths)},
           {"assembly", to_json(r.assembly)},
           {"euler_polynomial", r.euler_polynomial.str()},
           {"q_specialized_check", r.q_check},
           {"tables", tables}};
    if (r.paths.first)
        j["first_discrepancy"] = to_json(r.paths)["first_discrepancy"];
    else if (r.assembly.first)
        j["first_discrepancy"] = to_json(r.assembly)["first_discrepancy"];
    return j;
}

inline Json to_json(const GenusResult& g)
{
    Json j{{"claim", "elliptic genus == q-dimension of the chiral Euler character"},
           {"lambda", to_json(g.lambda)},
           {"genus", to_json(g.q_series)},
           {"expected", to_json(g.expected)},
           {"q_matches", g.q_matches},
           {"positive", g.positive},
           {"pass", g.pass()}};
    if (g.versus_euler)
        j["character_check"] = to_json(*g.versus_euler);
    return j;
}

inline Json to_json(const KKSolution& s)
{
    Json pred = Json::array();
    for (const auto& p : s.predicted)
        pred.push_back(Json{{"weight", to_json(p.weight)}, {"delta_degree", p.delta_degree}});
    return Json{{"root", to_json(s.root)},
                {"n", s.n},
                {"predicted", pred},
                {"height_family", Json{{"weight", to_json(s.height_family.weight)},
                                       {"delta_degree", s.height_family.delta_degree}}}};
}

inline Json to_json(const sl2::DSResult& r)
{
    Json blocks = Json::array();
    std::map<int, Json> per_degree;
    for (const auto& b : r.blocks) {
        Json dims = Json::object(), h = Json::object(), dst = Json::array();
        for (const auto& [g, n] : b.dims)
            dims[std::to_string(g)] = n;
        for (const auto& [g, n] : b.cohomology) {
            h[std::to_string(g)] = n;
            if (b.certified) {
                if (!per_degree.count(g))
                    per_degree[g] = Json::array();
                per_degree[g].push_back(Json::array({b.twisted, n}));
            }
        }
        for (const auto& [c, n] : b.dst_check)
            dst.push_back(Json::array({c, n}));
        blocks.push_back(Json{{"twisted_degree", b.twisted},
                              {"certified", b.certified},
                              {"d_squared_zero", b.d_squared_zero},
                              {"dims", dims},
                              {"cohomology", h},
                              {"dst_cohomology_above_diagonal", dst}});
    }
    Json cert = Json::object();
    for (const auto& [g, a] : per_degree)
        cert[std::to_string(g)] = a;
    int boundary = -1;
    for (const auto& b : r.blocks)
        if (b.certified)
            boundary = std::max(boundary, b.twisted);
    return Json{{"cutoff", r.cutoff},
                {"certified_up_to_twisted_degree", boundary},
                {"cohomology_by_ghost_degree", cert},
                {"blocks", blocks}};
}

} // namespace cbwb
