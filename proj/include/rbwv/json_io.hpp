#ifndef RBWV_JSON_IO_HPP
#define RBWV_JSON_IO_HPP

#include <json.hpp>

#include "rbwv/classifier.hpp"
#include "rbwv/cybe.hpp"
#include "rbwv/products.hpp"
#include "rbwv/verify.hpp"

namespace rbwv {

// Insertion-ordered JSON with rationals as canonical strings keeps command
// output byte-identical across runs.
using Json = nlohmann::ordered_json;

Json report_json(const VerifyReport& report);
Json report_json(const ObstructionReport& report);
Json report_json(const CybeReport& report);
Json report_json(const ScanReport& report);
Json table_json(const SolutionTable& table);
Json match_json(const MatchResult& result);
Json rows_json(const std::vector<TableRow>& rows);

// Band encoding with m the band variable, e.g.
// {"bands":[{"set":{"kind":"geq","a":2},"coef":"-1","left":"L(m)","right":"Ld(m)"}]}
Json tensor_json(const FormalTensor& tensor);

}  // namespace rbwv

#endif
