#ifndef OCCUPANCY_CLI_HPP
#define OCCUPANCY_CLI_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "occupancy/chain.hpp"
#include "occupancy/occupancy_dp.hpp"

namespace occupancy::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kToleranceBreach = 1,
  kInvalidInput = 2,
  kRouteMismatch = 3,
};

/// Malformed chain file; the message names the line/column or the field.
class ChainFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A route that cannot serve the given chain (closed form on 3 states, path
/// enumeration beyond its guard, ...).
class RouteMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChainFile {
  StochasticMatrix p;
  SubsetMask u;
};

/// {"states": [...]?, "P": [[...], ...], "U": [...]}. U lists either state
/// indices or state labels, never a mix.
ChainFile parse_chain_json(std::string_view text);
ChainFile load_chain_file(const std::filesystem::path& path);

/// Resolves a state given either as a label or as a 0-based index; labels
/// are tried first.
std::size_t resolve_state(const StochasticMatrix& p, std::string_view name);

struct ResultTable {
  std::string route;
  std::size_t horizon = 0;
  std::vector<std::string> labels;
  Matrix values;  // states x (horizon + 1)
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  OccupancyTable as_table() const { return OccupancyTable(horizon, values, labels); }
};

enum class Route { Dp, Gf, Closed, Enum };

Route parse_route(std::string_view name);
std::string_view route_name(Route route);
/// Row-sum tolerance each route declares for itself.
double route_tolerance(Route route);

/// Computes g(n, .) for every state along the given route. Throws
/// RouteMismatch when the route cannot handle the chain.
ResultTable compute_route(const ChainFile& chain, Route route, std::size_t n);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

void write_csv(std::ostream& out, const ResultTable& table);
nlohmann::ordered_json to_json(const ResultTable& table);
ResultTable result_table_from_json(const nlohmann::ordered_json& j);

/// Full command-line driver; `args` excludes the program name. Tables go to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace occupancy::cli

#endif  // OCCUPANCY_CLI_HPP
