#include "qlasso/io.hpp"

#include <fstream>
#include <sstream>

namespace qlasso {

std::string read_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + filename);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& filename, const std::string& contents) {
  std::ofstream out(filename, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open file for writing: " + filename);
  out << contents;
  if (!out) throw ParseError("write failed: " + filename);
}

LassoProblem problem_from_json(const nlohmann::json& j) {
  if (!j.contains("X") || !j.contains("y")) {
    throw ParseError("problem JSON needs \"X\" and \"y\"");
  }
  const auto& jx = j.at("X");
  const auto& jy = j.at("y");
  if (!jx.is_array() || jx.empty() || !jy.is_array()) {
    throw ParseError("problem JSON: \"X\" must be a nonempty array of rows");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(jx.size());
  const Eigen::Index d = static_cast<Eigen::Index>(jx.at(0).size());
  Matrix X(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = jx.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != d) {
      throw ParseError("problem JSON: row " + std::to_string(i) + " has inconsistent width");
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      X(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
  }
  if (static_cast<Eigen::Index>(jy.size()) != n) {
    throw ParseError("problem JSON: y length does not match the number of rows");
  }
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = jy.at(static_cast<std::size_t>(i)).get<double>();
  return LassoProblem(std::move(X), std::move(y));
}

LassoProblem problem_from_csv_text(const std::string& text,
                                   const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  int line_no = 0;
  bool maybe_header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    bool numeric = true;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
        if (used != field.size()) throw std::invalid_argument(field);
        row.push_back(v);
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (maybe_header && rows.empty()) {
        maybe_header = false;
        continue;  // tolerate one leading header row
      }
      throw ParseError(origin + ": row " + std::to_string(line_no) + " is not numeric");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(origin + ": row " + std::to_string(line_no) + " has inconsistent width");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().size() < 2) {
    throw ParseError(origin + ": need at least one row and two columns (features + y)");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = static_cast<Eigen::Index>(rows.front().size()) - 1;
  Matrix X(n, d);
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) X(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    y[i] = rows[static_cast<std::size_t>(i)].back();
  }
  return LassoProblem(std::move(X), std::move(y));
}

LassoProblem load_problem(const std::string& filename) {
  const std::string text = read_file(filename);
  if (filename.size() >= 5 && filename.substr(filename.size() - 5) == ".json") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(filename + ": " + e.what());
    }
    return problem_from_json(j);
  }
  return problem_from_csv_text(text, filename);
}

nlohmann::json path_to_json(const RegularisationPath& path) {
  nlohmann::json kinks = nlohmann::json::array();
  for (const Kink& kink : path.kinks) {
    nlohmann::json beta = nlohmann::json::object();
    for (const auto& [idx, val] : kink.beta.entries()) {
      beta[std::to_string(idx)] = val;
    }
    nlohmann::json jk = {{"lambda", kink.lambda},
                         {"beta", std::move(beta)},
                         {"event", kink_event_name(kink.event)}};
    if (kink.feature >= 0) jk["feature"] = kink.feature;
    kinks.push_back(std::move(jk));
  }
  nlohmann::json out = {{"mode", path.mode == PathMode::Exact ? "exact" : "approximate"},
                        {"epsilon", path.epsilon},
                        {"kinks", std::move(kinks)}};
  if (path.truncated) out["truncated"] = true;
  return out;
}

RegularisationPath path_from_json(const nlohmann::json& j) {
  RegularisationPath path;
  const std::string mode = j.value("mode", "exact");
  path.mode = mode == "exact" ? PathMode::Exact : PathMode::Approximate;
  path.epsilon = j.value("epsilon", 0.0);
  path.truncated = j.value("truncated", false);
  if (!j.contains("kinks") || !j.at("kinks").is_array()) {
    throw ParseError("path JSON needs a \"kinks\" array");
  }
  for (const auto& jk : j.at("kinks")) {
    Kink kink;
    kink.lambda = jk.at("lambda").get<double>();
    const std::string event = jk.at("event").get<std::string>();
    if (event == "Init") kink.event = KinkEvent::Init;
    else if (event == "Join") kink.event = KinkEvent::Join;
    else if (event == "Cross") kink.event = KinkEvent::Cross;
    else if (event == "Stationary") kink.event = KinkEvent::Stationary;
    else throw ParseError("unknown kink event: " + event);
    kink.feature = jk.value("feature", -1);
    for (const auto& [key, val] : jk.at("beta").items()) {
      kink.beta.set(std::stoi(key), val.get<double>());
    }
    path.kinks.push_back(std::move(kink));
  }
  return path;
}

}  // namespace qlasso
