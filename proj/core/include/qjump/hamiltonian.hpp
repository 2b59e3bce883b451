#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <variant>

namespace qjump {

using Complex = std::complex<double>;
using Vector3c = Eigen::Matrix<Complex, 3, 1>;
using Matrix3c = Eigen::Matrix<Complex, 3, 3>;

// Basis order: a = |0g>, b = |1g>, c = |0e>.
enum class Level : int { a = 0, b = 1, c = 2 };

enum class Frame { lab, rotating };

struct StateVector {
  Vector3c amplitudes = Vector3c(1.0, 0.0, 0.0);
  Frame frame = Frame::rotating;
  double time = 0.0;

  double norm_squared() const { return amplitudes.squaredNorm(); }
  double population(Level l) const { return std::norm(amplitudes[static_cast<int>(l)]); }
  static StateVector basis(Level l, Frame frame, double time = 0.0);
};

struct HamiltonianSpec {
  double omega_10 = 0.0;     // rad/s
  double omega_r = 0.0;      // rad/s
  double omega_drive = 0.0;  // rad/s
  double omega_c = 0.0;      // rad/s
  double omega_m = 0.0;      // rad/s
  double gamma_a = 0.0;      // 1/s
  double gamma_b = 0.0;
  double gamma_c = 0.0;
  double gamma_ba = 0.0;

  double detuning() const { return omega_10 - omega_drive; }
  double tls_detuning() const { return omega_r - omega_10; }
  void validate() const;
};

enum class Channel { escape_a = 0, escape_b = 1, escape_c = 2, relax_ba = 3 };
inline constexpr int kChannelCount = 4;

struct ChannelProbabilities {
  std::array<double, kChannelCount> p{};

  double& operator[](Channel ch) { return p[static_cast<int>(ch)]; }
  double operator[](Channel ch) const { return p[static_cast<int>(ch)]; }
  double escape() const { return p[0] + p[1] + p[2]; }
  double total() const { return p[0] + p[1] + p[2] + p[3]; }
};

// Lab frame: symmetric, real couplings, -i Gamma on the diagonal.
Matrix3c build_lab(const HamiltonianSpec& spec, double t);
// Frame rotating with diag(1, e^{-i w t}, e^{-i w10 t}).
Matrix3c build_rotating(const HamiltonianSpec& spec, double t);
// Frame rotating with diag(1, e^{-i w t}, e^{-i w t}); time independent, and
// populations coincide with the rotating frame.
Matrix3c build_drive_frame(const HamiltonianSpec& spec);

// Upper bound on the row-sum norm of H over all t.
double hamiltonian_norm_bound(const HamiltonianSpec& spec, Frame frame);

struct StepResult {
  StateVector state;
  ChannelProbabilities channels;
  int substeps = 0;
};

// Classical RK4 in the state's frame. Splits dt so that h * |H| <= max_phase.
// Channel probabilities partition the norm loss in proportion to the
// accumulated 2 Gamma_i |psi_i|^2 (and 2 gamma_ba |psi_b|^2).
StepResult evolve_step(const StateVector& psi, const HamiltonianSpec& spec, double dt,
                       double max_phase = 0.1);

// Plain fixed-step RK4 with exactly n substeps (no channel bookkeeping).
StateVector rk4_fixed(const StateVector& psi, const HamiltonianSpec& spec, double dt, int n);

struct Switched {
  Level level;
};
using JumpOutcome = std::variant<StateVector, Switched>;

// Escape channels end the sweep; relaxation collapses onto |a>.
JumpOutcome apply_jump(const StateVector& psi, Channel channel);

}  // namespace qjump
