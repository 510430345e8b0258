#include <charconv>
#include <cmath>
#include <ostream>

#include "occupancy/cli.hpp"
#include "occupancy/oracle.hpp"
#include "occupancy/series.hpp"
#include "occupancy/two_state.hpp"

namespace occupancy::cli {

Route parse_route(std::string_view name) {
  if (name == "dp") return Route::Dp;
  if (name == "gf") return Route::Gf;
  if (name == "closed") return Route::Closed;
  if (name == "enum") return Route::Enum;
  throw std::invalid_argument("unknown route \"" + std::string(name) +
                              "\" (expected dp, gf, closed or enum)");
}

std::string_view route_name(Route route) {
  switch (route) {
    case Route::Dp: return "dp";
    case Route::Gf: return "gf";
    case Route::Closed: return "closed";
    case Route::Enum: return "enum";
  }
  return "?";
}

double route_tolerance(Route route) {
  return route == Route::Closed ? 1e-9 : 1e-12;
}

namespace {

Matrix closed_values(const ChainFile& chain, std::size_t n) {
  if (chain.p.size() != 2) {
    throw RouteMismatch("route closed needs a 2-state chain, got " +
                        std::to_string(chain.p.size()) + " states");
  }
  if (chain.u.count() != 1) {
    throw RouteMismatch("route closed needs U to hold exactly one of the 2 states");
  }
  // Relabel so the tracked state plays the role of state 0.
  const std::size_t tracked = chain.u.contains(0) ? 0 : 1;
  const std::size_t other = 1 - tracked;
  try {
    const two_state::TwoStateParams params(chain.p(tracked, other),
                                           chain.p(other, tracked));
    Matrix values(2, static_cast<Eigen::Index>(n + 1));
    for (std::size_t k = 0; k <= n; ++k) {
      values(static_cast<Eigen::Index>(tracked), static_cast<Eigen::Index>(k)) =
          two_state::g0_closed(params, n, k);
      values(static_cast<Eigen::Index>(other), static_cast<Eigen::Index>(k)) =
          two_state::g1_closed(params, n, k);
    }
    return values;
  } catch (const two_state::ParameterError& e) {
    throw RouteMismatch(std::string("route closed: ") + e.what());
  }
}

Matrix enum_values(const ChainFile& chain, std::size_t n) {
  Matrix values(static_cast<Eigen::Index>(chain.p.size()),
                static_cast<Eigen::Index>(n + 1));
  try {
    for (std::size_t i = 0; i < chain.p.size(); ++i) {
      const auto pmf = enumerate_paths(chain.p, chain.u, n, i);
      for (std::size_t k = 0; k <= n; ++k)
        values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = pmf[k];
    }
  } catch (const TooManyPaths& e) {
    throw RouteMismatch(std::string("route enum: ") + e.what());
  }
  return values;
}

}  // namespace

ResultTable compute_route(const ChainFile& chain, Route route, std::size_t n) {
  ResultTable t;
  t.route = std::string(route_name(route));
  t.horizon = n;
  t.labels = chain.p.labels();
  switch (route) {
    case Route::Dp: t.values = occupancy_distribution(chain.p, chain.u, n).values(); break;
    case Route::Gf: t.values = gf_distribution(chain.p, chain.u, n).values(); break;
    case Route::Closed: t.values = closed_values(chain, n); break;
    case Route::Enum: t.values = enum_values(chain, n); break;
  }
  t.meta["route"] = t.route;
  t.meta["tolerance"] = route_tolerance(route);
  if (route == Route::Gf) t.meta["truncation_order"] = n;
  if (route == Route::Closed) {
    const std::size_t tracked = chain.u.contains(0) ? 0 : 1;
    const two_state::TwoStateParams params(chain.p(tracked, 1 - tracked),
                                           chain.p(1 - tracked, tracked));
    t.meta["r"] = params.r();
    t.meta["binomial_branch"] = params.binomial();
    t.meta["cancellation_warning"] = two_state::cancellation_warning(params, n);
  }
  t.meta["version"] = std::string(kToolVersion);
  return t;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const ResultTable& table) {
  for (const auto& [key, value] : table.meta.items()) {
    out << "# " << key << '='
        << (value.is_string() ? value.get<std::string>()
            : value.is_number_float() ? format_double(value.get<double>())
                                      : value.dump())
        << '\n';
  }
  out << "state";
  for (std::size_t k = 0; k <= table.horizon; ++k) out << ",k=" << k;
  out << '\n';
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    out << table.labels[i];
    for (std::size_t k = 0; k <= table.horizon; ++k)
      out << ',' << format_double(table.values(static_cast<Eigen::Index>(i),
                                               static_cast<Eigen::Index>(k)));
    out << '\n';
  }
}

nlohmann::ordered_json to_json(const ResultTable& table) {
  nlohmann::ordered_json j;
  j["route"] = table.route;
  j["n"] = table.horizon;
  nlohmann::ordered_json rows = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    std::vector<double> row(table.horizon + 1);
    for (std::size_t k = 0; k <= table.horizon; ++k)
      row[k] = table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    rows[table.labels[i]] = row;
  }
  j["table"] = std::move(rows);
  j["meta"] = table.meta;
  return j;
}

ResultTable result_table_from_json(const nlohmann::ordered_json& j) {
  ResultTable t;
  t.route = j.at("route").get<std::string>();
  t.horizon = j.at("n").get<std::size_t>();
  const auto& rows = j.at("table");
  t.values.resize(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(t.horizon + 1));
  Eigen::Index i = 0;
  for (const auto& [label, row] : rows.items()) {
    t.labels.push_back(label);
    if (row.size() != t.horizon + 1) {
      throw ChainFileError("table row \"" + label + "\" has the wrong length");
    }
    for (std::size_t k = 0; k <= t.horizon; ++k)
      t.values(i, static_cast<Eigen::Index>(k)) = row[k].get<double>();
    ++i;
  }
  if (j.contains("meta")) t.meta = j["meta"];
  return t;
}

}  // namespace occupancy::cli
