#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "binfty/algebra.hpp"
#include "binfty/report.hpp"

namespace binfty {

using Json = nlohmann::ordered_json;

// Load-time validation failure; carries the failing checks with witnesses.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<CheckResult> checks)
      : Error(ErrorKind::InvalidInput, what), checks_(std::move(checks)) {}
  const std::vector<CheckResult>& checks() const { return checks_; }

 private:
  std::vector<CheckResult> checks_;
};

// Parse without validating. `where` prefixes field paths in error messages.
AlgebraPresentation algebra_from_json(const Json& j, const std::string& where = "");
AlgebraMorphism morphism_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& where = "");

Json algebra_to_json(const AlgebraPresentation& A);
Json morphism_to_json(const AlgebraMorphism& f);

Json read_json_file(const std::filesystem::path& path);
bool is_morphism_json(const Json& j);

// Parse and validate; throws ParseError or ValidationError.
AlgebraPresentation load_algebra(const std::filesystem::path& path);
AlgebraMorphism load_morphism(const std::filesystem::path& path);

// Validation checks of a parsed file, without throwing on failure.
std::vector<CheckResult> validation_checks(const AlgebraPresentation& A);
std::vector<CheckResult> validation_checks(const AlgebraMorphism& f);

enum class ReportFormat { text, machine };

std::string render_text(const Report& r);
std::string render_machine(const Report& r);
std::string emit_report(const Report& r, ReportFormat format);

}  // namespace binfty
