#ifndef DIOPH_JSON_IO_HPP
#define DIOPH_JSON_IO_HPP

// JSON renderings of every result type, and the parser that turns a
// construction document back into (plan, xi, result).

#include <json.hpp>

#include "dioph/bounds.hpp"
#include "dioph/cantor.hpp"
#include "dioph/construct.hpp"
#include "dioph/exponents.hpp"
#include "dioph/ladder.hpp"

namespace dioph {

using Json = nlohmann::json;

/// Finite doubles as numbers, infinities as the strings "inf" / "-inf".
Json number(double v);

Json to_json(const IntervalLadder& ladder);
Json to_json(const Certificate& c);
Json to_json(const SplitReport& report);
Json to_json(const ApproxRecord& r);
Json to_json(const ExponentEstimate& e);
Json to_json(const ClaimReport& r);
Json to_json(const ReverseReport& r);
Json to_json(const CoverResult& r);
Json to_json(const BoundResult& r);

/// Construction document: inputs echo, ladder, parts, certificates, claims.
Json split_document(const PlanParams& params, const SplitPlan& plan, const DigitVector& xi,
                    const SplitResult& result);

struct SplitDocument {
  PlanParams params;
  SplitPlan plan;
  DigitVector xi;
  SplitResult result;
};

/// Inverse of split_document; the plan is rebuilt from the inputs echo.
/// Throws std::invalid_argument on malformed documents.
SplitDocument parse_split_document(const Json& doc);

}  // namespace dioph

#endif
