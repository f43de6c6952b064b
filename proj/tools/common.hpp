#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gwprod/curve_classes.hpp"
#include "gwprod/graph_functors.hpp"
#include "gwprod/linalg.hpp"

namespace tools {

inline constexpr int kPass = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsage = 2;

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
inline nlohmann::json load_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
    return nlohmann::json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw gwprod::PreconditionError("cannot open '" + arg + "'");
  return nlohmann::json::parse(in);
}

inline void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw gwprod::PreconditionError("cannot write '" + out_path + "'");
  out << j.dump(2) << "\n";
}

/// Parses "3" or "2,2".
inline gwprod::CurveClass parse_class(const std::string& text) {
  std::vector<std::int64_t> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw gwprod::PreconditionError("bad class '" + text + "'");
    if (v < 0) throw gwprod::PreconditionError("negative coordinate in '" + text + "'");
    coords.push_back(v);
  }
  if (coords.empty()) throw gwprod::PreconditionError("empty class");
  return gwprod::CurveClass(std::move(coords));
}

/// Runs the parser and the selected action, mapping failures to exit codes.
template <class Action>
int run(CLI::App& app, int argc, char** argv, Action&& action) {
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action();
  } catch (const gwprod::NoStableModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const gwprod::linalg::InconsistentSystemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const gwprod::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const gwprod::MalformedGraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  }
}

}  // namespace tools
