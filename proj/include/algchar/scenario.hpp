#pragma once

#include <json.hpp>
#include <map>
#include <memory>
#include <optional>

#include "algchar/acyclic.hpp"
#include "algchar/cohomology.hpp"
#include "algchar/reps.hpp"

namespace algchar {

/// One declarative task line: keyword, positional names, key=value params.
struct Task {
  std::string echo;  // original line
  std::string kind;
  std::vector<std::string> args;
  std::map<std::string, std::string> params;
};

/// Parsed scenario: one field and chart, named objects, ordered tasks.
/// Objects are owned here; connections and forms point into the owned
/// algebroids/complexes, so a Scenario must outlive its Report payload use.
struct Scenario {
  Field field = Field::Q;
  std::vector<std::string> chart;
  CtxPtr ctx;
  std::map<std::string, std::shared_ptr<LieAlgebroid>> algebroids;
  struct ComplexDecl {
    std::shared_ptr<SuperComplex> cx;
    std::string algebroid;
  };
  std::map<std::string, ComplexDecl> complexes;
  struct MetricDecl {
    Metric metric;
    std::string complex_name;
  };
  std::map<std::string, MetricDecl> metrics;
  std::map<std::string, GConnection> connections;
  struct AuxDecl {
    std::vector<Matrix> gammas;
    std::string algebroid;
  };
  std::map<std::string, AuxDecl> aux_connections;
  struct SplittingDecl {
    Splitting s;
    std::string algebroid;
  };
  std::map<std::string, SplittingDecl> splittings;
  struct FormDecl {
    GForm form;
    std::string algebroid;
  };
  std::map<std::string, FormDecl> forms;
  std::vector<Task> tasks;
};

/// Throws ParseError with a line number on malformed input.
Scenario parse_scenario_text(const std::string& text,
                             std::optional<Field> field_override = {});
Scenario parse_scenario_file(const std::string& path,
                             std::optional<Field> field_override = {});

struct RunOptions {
  bool check = false;                  // run the invariant suite on all objects
  std::optional<int> truncation;       // override the default window
};

struct TaskRecord {
  std::string echo;
  std::string status;  // OK | VIOLATION | UNDECIDED | ERROR
  nlohmann::ordered_json result;
  double millis = 0.0;
};

struct Report {
  Field field = Field::Q;
  std::vector<std::string> chart;
  std::vector<TaskRecord> records;

  bool failed() const;
  /// Deterministic machine rendering (no timings).
  nlohmann::ordered_json machine() const;
  std::string human() const;
  /// 0 all OK/UNDECIDED-free, 1 when any VIOLATION or ERROR occurred.
  int exit_code() const { return failed() ? 1 : 0; }
};

Report run_scenario(Scenario& sc, const RunOptions& opts = {});

/// Serialize a scalar form as a sparse component list.
nlohmann::ordered_json form_to_json(const GForm& w);

}  // namespace algchar
