#pragma once

#include <string>

#include "qlasso/ledger.hpp"
#include "qlasso/path.hpp"
#include "qlasso/problem.hpp"

#include "json.hpp"

namespace qlasso {

/// CSV: rows are observations, last column is y, optional header. JSON:
/// {"X": [[...]], "y": [...]}. Format picked by file extension (.json vs
/// anything else). ParseError messages name the offending row.
LassoProblem load_problem(const std::string& filename);
LassoProblem problem_from_json(const nlohmann::json& j);
LassoProblem problem_from_csv_text(const std::string& text,
                                   const std::string& origin = "<csv>");

nlohmann::json path_to_json(const RegularisationPath& path);
RegularisationPath path_from_json(const nlohmann::json& j);

std::string read_file(const std::string& filename);
void write_file(const std::string& filename, const std::string& contents);

}  // namespace qlasso
