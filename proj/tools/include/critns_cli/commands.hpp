#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "critns/certifier.hpp"
#include "critns/datagen.hpp"
#include "critns/field.hpp"
#include "critns_cli/config.hpp"

namespace critns::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitHypothesisFail = 3;

struct Options {
  std::filesystem::path out = "out";
  int threads = 1;
  std::optional<std::uint64_t> seed;
};

/// --threads if given, else CRITNS_THREADS, else 1.
int resolve_threads(std::optional<int> flag);

Grid grid_from(const Config& cfg);
datagen::DataFamilySpec datum_spec_from(const Config& cfg, const Options& opt);
/// [datum] file = PATH reads a CNSF snapshot; otherwise the family spec is built on [grid].
SpectralVectorField datum_from(const Config& cfg, const Options& opt);
cert::CertifierConfig certifier_from(const Config& cfg);

struct SweepRow {
  int member = 0;
  double axis_value = 0.0;
  double besov_m1_inf_inf = 0.0;
  double condition_lhs = 0.0;
  double sup_term = 0.0;
  double l2l2_term = 0.0;
  double cg_lhs = 0.0;
  double cg_rhs = 0.0;
  double cg_ratio = 0.0;
  bool passes_practical = false;
};

std::vector<SweepRow> run_sweep(const Config& cfg, const Options& opt);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& hash);

int cmd_certify(const Config& cfg, const Options& opt);
int cmd_simulate(const Config& cfg, const Options& opt);
int cmd_gronwall(const Config& cfg, const Options& opt);
int cmd_sweep(const Config& cfg, const Options& opt);
/// Norms of a CNSF velocity snapshot, printed as JSON and written to <out>/norms.json.
int cmd_norms(const std::filesystem::path& snapshot, const Options& opt, std::ostream& out);

}  // namespace critns::cli
