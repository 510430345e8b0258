#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "occupancy/cli.hpp"

namespace occupancy::cli {
namespace {

using nlohmann::json;

std::vector<std::string> read_labels(const json& doc) {
  std::vector<std::string> labels;
  if (!doc.contains("states")) return labels;
  const json& states = doc["states"];
  if (!states.is_array()) throw ChainFileError("field \"states\": expected an array of labels");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].is_string()) {
      throw ChainFileError("field \"states\"[" + std::to_string(i) + "]: expected a string");
    }
    auto label = states[i].get<std::string>();
    if (!seen.insert(label).second) {
      throw ChainFileError("field \"states\"[" + std::to_string(i) +
                           "]: duplicate label \"" + label + "\"");
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<std::vector<double>> read_rows(const json& doc) {
  if (!doc.contains("P")) throw ChainFileError("missing field \"P\"");
  const json& rows = doc["P"];
  if (!rows.is_array()) throw ChainFileError("field \"P\": expected an array of rows");
  std::vector<std::vector<double>> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) {
      throw ChainFileError("field \"P\"[" + std::to_string(i) + "]: expected an array");
    }
    std::vector<double> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (!rows[i][j].is_number()) {
        throw ChainFileError("field \"P\"[" + std::to_string(i) + "][" +
                             std::to_string(j) + "]: expected a number");
      }
      row.push_back(rows[i][j].get<double>());
    }
    entries.push_back(std::move(row));
  }
  return entries;
}

SubsetMask read_subset(const json& doc, const StochasticMatrix& p) {
  if (!doc.contains("U")) throw ChainFileError("missing field \"U\"");
  const json& u = doc["U"];
  if (!u.is_array()) throw ChainFileError("field \"U\": expected an array");

  const bool all_labels = std::all_of(u.begin(), u.end(),
                                      [](const json& e) { return e.is_string(); });
  const bool all_indices = std::all_of(u.begin(), u.end(), [](const json& e) {
    return e.is_number_unsigned() || (e.is_number_integer() && e.get<long long>() >= 0);
  });
  if (!all_labels && !all_indices) {
    throw ChainFileError(
        "field \"U\": expected only state labels or only non-negative state indices");
  }

  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (all_labels && !u.empty()) {
      const auto label = u[i].get<std::string>();
      const auto it = std::find(p.labels().begin(), p.labels().end(), label);
      if (it == p.labels().end()) {
        throw ChainFileError("field \"U\"[" + std::to_string(i) + "]: unknown state \"" +
                             label + "\"");
      }
      members.push_back(static_cast<std::size_t>(it - p.labels().begin()));
    } else {
      const auto idx = u[i].get<std::size_t>();
      if (idx >= p.size()) {
        throw ChainFileError("field \"U\"[" + std::to_string(i) + "]: state index " +
                             std::to_string(idx) + " out of range");
      }
      members.push_back(idx);
    }
  }
  return SubsetMask::from_indices(p.size(), members);
}

}  // namespace

ChainFile parse_chain_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ChainFileError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ChainFileError("chain file must contain a JSON object");

  auto labels = read_labels(doc);
  auto rows = read_rows(doc);
  StochasticMatrix p = [&] {
    try {
      return validate_matrix(rows, kRowSumTolerance, std::move(labels));
    } catch (const ChainError& e) {
      throw ChainFileError(std::string("field \"P\": ") + e.what());
    }
  }();
  SubsetMask u = read_subset(doc, p);
  return ChainFile{std::move(p), std::move(u)};
}

ChainFile load_chain_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ChainFileError("cannot open chain file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_chain_json(text.str());
  } catch (const ChainFileError& e) {
    throw ChainFileError(path.string() + ": " + e.what());
  }
}

std::size_t resolve_state(const StochasticMatrix& p, std::string_view name) {
  const auto& labels = p.labels();
  if (const auto it = std::find(labels.begin(), labels.end(), name); it != labels.end())
    return static_cast<std::size_t>(it - labels.begin());
  std::size_t idx = 0;
  const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), idx);
  if (ec != std::errc() || ptr != name.data() + name.size() || idx >= p.size()) {
    throw ChainFileError("unknown state \"" + std::string(name) + "\"");
  }
  return idx;
}

}  // namespace occupancy::cli
