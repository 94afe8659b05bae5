#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "critns/error.hpp"
#include "critns/field.hpp"

namespace critns::solver {

enum class Scheme { mild_picard, imex_if_rk2, imex_if_rk4 };

std::string scheme_name(Scheme s);
Scheme parse_scheme(const std::string& s);

/// Non-finite values appeared during a step. Carries the last finite state.
class BlowupOrInstability : public Error {
 public:
  BlowupOrInstability(const std::string& what, SpectralVectorField last_good, double time)
      : Error(what), last_good_(std::move(last_good)), time_(time) {}
  const SpectralVectorField& last_good() const { return last_good_; }
  double time() const { return time_; }

 private:
  SpectralVectorField last_good_;
  double time_;
};

/// P(Nu): Leray projection of the dealiased nonlinear term.
SpectralVectorField projected_nonlinear(const SpectralVectorField& u);

/// One integrating-factor Runge-Kutta step for du/dt = Delta u + P(Nu).
/// The linear part is integrated exactly; the result is projected and marked solenoidal.
SpectralVectorField step_imex(const SpectralVectorField& u, double dt, Scheme scheme);

/// Advective CFL number dt * max|u| * k_max with k_max the dealiasing radius.
double cfl_number(const SpectralVectorField& u, double dt);

/// Fraction of the energy carried by modes in the outer third of the dealiased ball.
double tail_energy_fraction(const SpectralVectorField& u);

struct RunConfig {
  double dt = 1e-3;
  double t_start = 0.0;
  double t_end = 1.0;
  Scheme scheme = Scheme::imex_if_rk4;
  /// Observer is called every `cadence` steps, at the start and at the end.
  int cadence = 10;
  /// Stop when tail_energy_fraction exceeds this at an observation.
  double tail_limit = 0.1;

  void validate() const;
  int steps() const;
};

/// Running record of the energy balance ||u(t)||^2 + 2 int ||grad u||^2 - ||u(t_start)||^2.
struct EnergySample {
  double time = 0.0;
  double energy = 0.0;       // ||u||_{L^2}^2
  double dissipation = 0.0;  // int_{t_start}^t ||grad u||_{L^2}^2
  double defect = 0.0;       // energy + 2 dissipation - initial energy
};

using Observer = std::function<void(double t, const SpectralVectorField& u, const EnergySample& e)>;

struct RunResult {
  SpectralVectorField final_state;
  double final_time = 0.0;
  int steps_taken = 0;
  /// "complete", "blowup: non-finite values" or "blowup: spectral tail".
  std::string status = "complete";
  std::vector<EnergySample> energy;
  double max_solenoidal_defect = 0.0;
  bool complete() const { return status == "complete"; }
};

/// Integrate with an IMEX scheme from u0 at cfg.t_start to cfg.t_end.
///
/// The dissipation integral uses the trapezoid rule with Hermite end corrections,
/// the time derivative of ||grad u||^2 being evaluated from the stage-one nonlinear term.
RunResult run_imex(const SpectralVectorField& u0, const RunConfig& cfg, const Observer& observer = {});

struct PicardResult {
  std::vector<double> times;
  /// iterates[n][m]: iterate n at times[m]; only every `keep_every`-th mesh time is kept.
  std::vector<std::vector<SpectralVectorField>> iterates;
  /// sup over the mesh of ||u^{(n+1)} - u^{(n)}||_{L^2}, one entry per iteration.
  std::vector<double> successive_distance;
  bool diverged = false;
  const SpectralVectorField& final_state() const { return iterates.back().back(); }
};

/// Picard iteration of the mild formulation on the uniform mesh t_m = m * dt.
///
/// u^{(0)} = e^{t Delta} u0 and u^{(n+1)} = u^{(0)} + int_0^t e^{(t - tau) Delta} P Nu^{(n)}(tau) d tau,
/// the Duhamel integral advanced panel by panel with the exponential trapezoid rule.
PicardResult picard_mild(const SpectralVectorField& u0, double t_end, int depth, double dt, int keep_every = 1);

/// v(t) = u(t) - e^{(t - t0) Delta} u0 for each state.
std::vector<SpectralVectorField> split_linear(const std::vector<double>& times,
                                              const std::vector<SpectralVectorField>& states,
                                              const SpectralVectorField& u0, double t0 = 0.0);

}  // namespace critns::solver
