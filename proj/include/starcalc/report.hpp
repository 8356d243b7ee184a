#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "starcalc/generators.hpp"
#include "starcalc/star_complex.hpp"

namespace starcalc {

inline constexpr int kReportSchemaVersion = 1;

/// Outcome of one randomized law-suite run. Residuals are on preimage scale.
struct AxiomReport {
  std::string suite;
  std::string carrier;
  GeneratorPair pair;
  std::size_t trials = 0;
  double tolerance = 0.0;
  bool passed = false;
  double worst_residual = 0.0;
  std::optional<nlohmann::ordered_json> counterexample;
  std::vector<std::string> notes;
};

inline nlohmann::ordered_json to_json(const AxiomReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["carrier"] = r.carrier;
  j["pair"] = {{"alpha", r.pair.alpha.id()}, {"beta", r.pair.beta.id()}};
  j["trials"] = r.trials;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["worst_residual"] = r.worst_residual;
  j["counterexample"] = r.counterexample ? *r.counterexample : nlohmann::ordered_json(nullptr);
  j["notes"] = r.notes;
  return j;
}

inline nlohmann::ordered_json preimage_json(std::complex<double> z) { return {z.real(), z.imag()}; }
inline nlohmann::ordered_json preimage_json(const StarComplex& z) { return preimage_json(z.preimage()); }

/// Accumulates law residuals for one suite. The first law that exceeds the
/// tolerance supplies the counterexample.
class LawAudit {
 public:
  explicit LawAudit(double tolerance) : tolerance_(tolerance) {}

  template <class MakeInputs>
  void record(std::string_view law, double residual, MakeInputs&& inputs) {
    if (std::isnan(residual)) {
      structural_failure(law, inputs());
      return;
    }
    if (residual > worst_) worst_ = residual;
    if (residual > tolerance_ && !counterexample_) {
      counterexample_ = nlohmann::ordered_json{{"law", law}, {"residual", residual}, {"inputs", inputs()}};
    }
  }

  void structural_failure(std::string_view law, nlohmann::ordered_json inputs) {
    structural_ = true;
    if (!counterexample_)
      counterexample_ = nlohmann::ordered_json{{"law", law}, {"residual", nullptr}, {"inputs", std::move(inputs)}};
  }

  void note(std::string text) { notes_.push_back(std::move(text)); }

  /// Folds another audit (same tolerance assumed) into this one.
  void merge(const LawAudit& other) {
    worst_ = std::max(worst_, other.worst_);
    structural_ = structural_ || other.structural_;
    if (!counterexample_ && other.counterexample_) counterexample_ = other.counterexample_;
    notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
  }

  double worst() const noexcept { return worst_; }
  bool ok() const noexcept { return !structural_ && worst_ <= tolerance_; }

  AxiomReport finish(std::string suite, std::string carrier, const GeneratorPair& pair, std::size_t trials) && {
    AxiomReport r;
    r.suite = std::move(suite);
    r.carrier = std::move(carrier);
    r.pair = pair;
    r.trials = trials;
    r.tolerance = tolerance_;
    r.passed = ok();
    r.worst_residual = worst_;
    r.counterexample = std::move(counterexample_);
    r.notes = std::move(notes_);
    return r;
  }

 private:
  double tolerance_;
  double worst_ = 0.0;
  bool structural_ = false;
  std::optional<nlohmann::ordered_json> counterexample_;
  std::vector<std::string> notes_;
};

enum class ReportFormat { text, json };

inline bool all_passed(const std::vector<AxiomReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return true;
}

/// Renders a batch of reports. Overall status is `ok` iff every report passed
/// (vacuously for an empty batch).
inline std::string emit_report(const std::vector<AxiomReport>& reports, ReportFormat format) {
  const bool ok = all_passed(reports);
  if (format == ReportFormat::json) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["status"] = ok ? "ok" : "fail";
    doc["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) doc["reports"].push_back(to_json(r));
    return doc.dump(2) + "\n";
  }
  std::string out;
  for (const auto& r : reports) {
    out += r.passed ? "PASS " : "FAIL ";
    out += r.suite + " [" + r.carrier + "; " + r.pair.name() + "] trials=" + std::to_string(r.trials) +
           " tol=" + format_number(r.tolerance) + " worst=" + format_number(r.worst_residual) + "\n";
    if (r.counterexample) out += "  counterexample: " + r.counterexample->dump() + "\n";
    for (const auto& n : r.notes) out += "  note: " + n + "\n";
  }
  out += std::string("overall: ") + (ok ? "ok" : "fail") + " (" + std::to_string(reports.size()) + " suite" +
         (reports.size() == 1 ? "" : "s") + ")\n";
  return out;
}

}  // namespace starcalc
