#pragma once

#include "harmlab/caustic.hpp"
#include "harmlab/construct.hpp"
#include "harmlab/hroots.hpp"
#include "harmlab/lemniscate.hpp"
#include "harmlab/newton.hpp"
#include "json.hpp"

namespace harmlab::cli {

// Polylines serialize as {"re": [...], "im": [...]} plus "theta" where the
// samples carry one.
nlohmann::json polyline_json(const std::vector<cplx>& pts);

nlohmann::json to_json(const HarmonicPoly& h);
nlohmann::json to_json(const RootSet& rs);
nlohmann::json to_json(const CurveComponent& c);
nlohmann::json to_json(const CausticCurve& c);
nlohmann::json to_json(const LatticePolygon& p);
nlohmann::json to_json(const GenericityReport& g);
nlohmann::json to_json(const BernsteinReport& b);
nlohmann::json to_json(const ExcessRecord& r);
nlohmann::json to_json(const ScanTable& t);
nlohmann::json to_json(const ConstructionResult& c);
nlohmann::json to_json(const TwoZeroCertificate& c);
nlohmann::json to_json(const InflectionReport& r);

}  // namespace harmlab::cli
