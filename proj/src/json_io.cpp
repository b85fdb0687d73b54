#include "twistplane/json_io.hpp"

namespace twistplane {

using nlohmann::json;

json to_json(const BandMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (const auto& [j, v] : m.row(i)) row.push_back(json::array({j, v.to_string()}));
        rows.push_back(std::move(row));
    }
    return json{{"field", m.field().to_string()},
                {"n", m.size()},
                {"exact_rows", m.exact_rows()},
                {"rows", std::move(rows)}};
}

BandMatrix band_matrix_from_json(const json& j) {
    Field f = Field::parse(j.at("field").get<std::string>());
    std::size_t n = j.at("n").get<std::size_t>();
    std::size_t exact = j.at("exact_rows").get<std::size_t>();
    const json& rows = j.at("rows");
    std::vector<BandMatrix::Row> out(rows.size());
    int band = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& cell : rows[i]) {
            std::size_t col = cell.at(0).get<std::size_t>();
            out[i][col] = Scalar::parse(f, cell.at(1).get<std::string>());
            band = std::max<long>(band, static_cast<long>(col) - static_cast<long>(i));
        }
    }
    return BandMatrix::from_rows(f, n, exact, std::move(out), band);
}

json to_json(const Poly2& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back(json{{"exp", json::array({e.first, e.second})}, {"coef", c.to_string()}});
    return terms;
}

json to_json(const verify::VerifyReport& r) {
    json checks = json::array();
    json first = nullptr;
    for (const auto& c : r.checks) {
        checks.push_back(json{{"id", c.id},
                              {"k", c.k},
                              {"status", c.pass ? "pass" : "fail"},
                              {"window", c.window}});
        if (!c.pass && first.is_null()) {
            first = json{{"id", c.id}, {"k", c.k}};
            if (c.failure) {
                first["i"] = c.failure->i;
                first["j"] = c.failure->j;
                first["lhs"] = c.failure->lhs;
                first["rhs"] = c.failure->rhs;
            }
        }
    }
    return json{{"checks", std::move(checks)}, {"first_failure", std::move(first)}};
}

json to_json(const quadratic::ClassificationReport& r) {
    json out{{"verdict", quadratic::to_string(r.verdict)},
             {"method", quadratic::to_string(r.method)},
             {"case", r.case_tag},
             {"lambda", r.lambda.to_string()}};
    out["witness_n"] = r.witness_n ? json(*r.witness_n) : json(nullptr);
    out["scan_bound"] = r.scan_bound ? json(*r.scan_bound) : json(nullptr);
    if (r.eigenvalues)
        out["eigenvalues"] =
            json::array({r.eigenvalues->first.to_string(), r.eigenvalues->second.to_string()});
    if (r.algebra_type) {
        out["algebra_type"] = r.algebra_type->label();
        if (r.algebra_type->q) out["q"] = r.algebra_type->q->to_string();
    } else {
        out["algebra_type"] = nullptr;
    }
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

json to_json(const bfamily::SeqPrefix& p) {
    return json{{"n", p.n()}, {"L", p.values()}};
}

bfamily::SeqPrefix seq_prefix_from_json(const json& j) {
    return bfamily::SeqPrefix(j.at("n").get<long>(), j.at("L").get<std::vector<long>>());
}

json to_json(const afamily::KSequences& s) {
    json r = json::array();
    for (const auto& v : s.r) r.push_back(v.to_string());
    json c = json::array();
    for (const auto& row : s.c) {
        json jr = json::array();
        for (const auto& v : row) jr.push_back(v.to_string());
        c.push_back(std::move(jr));
    }
    json out{{"R", std::move(r)}, {"C", std::move(c)}};
    out["root_at"] = s.root_at ? json(*s.root_at) : json(nullptr);
    return out;
}

json to_json(const verify::BranchFixture& f) {
    json rows = json::array();
    for (const auto& row : f.rows) {
        json jr = json::array();
        for (const auto& [j, v] : row) jr.push_back(json::array({j, v.to_string()}));
        rows.push_back(std::move(jr));
    }
    json out{{"tag", f.name},
             {"n", f.n},
             {"rows", std::move(rows)},
             {"undetermined_tail", f.undetermined_tail}};
    out["markers"] = f.markers ? json(*f.markers) : json(nullptr);
    return out;
}

}  // namespace twistplane
