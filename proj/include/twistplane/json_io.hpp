#pragma once

#include <json.hpp>

#include "twistplane/afamily.hpp"
#include "twistplane/band_matrix.hpp"
#include "twistplane/bfamily.hpp"
#include "twistplane/poly2.hpp"
#include "twistplane/quadratic.hpp"
#include "twistplane/verifier.hpp"

namespace twistplane {

nlohmann::json to_json(const BandMatrix& m);
BandMatrix band_matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Poly2& p);

nlohmann::json to_json(const verify::VerifyReport& r);
nlohmann::json to_json(const quadratic::ClassificationReport& r);
nlohmann::json to_json(const bfamily::SeqPrefix& p);
bfamily::SeqPrefix seq_prefix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const afamily::KSequences& s);
nlohmann::json to_json(const verify::BranchFixture& f);

}  // namespace twistplane
