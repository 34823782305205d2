#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pam/model.hpp"

namespace pam {

// A replica trajectory left the double range.
class FieldBlowupError : public std::runtime_error {
 public:
  FieldBlowupError(const std::string& msg, std::int64_t replica, std::int64_t step)
      : std::runtime_error(msg), replica(replica), step(step) {}
  std::int64_t replica;
  std::int64_t step;
};

// Lattice discretization of [-L, L] x [0, t_end] plus Monte Carlo bookkeeping.
struct SimGrid {
  double half_width = 1.0;   // L
  int nx = 201;              // grid points including both boundaries
  double t_end = 0.01;
  double dt = 1e-5;
  double delta_width = 0.0;  // mu of the Gaussian initial bump; 0 = lattice delta
  int replicas = 1;
  std::uint64_t seed = 0;

  double dx() const { return 2.0 * half_width / (nx - 1); }
  int steps() const { return (int)(t_end / dt + 0.5); }
  void validate(const ModelParams& p) const;
};

struct MomentEstimate {
  double mean = 0.0;
  double std_err = 0.0;  // sample standard deviation / sqrt(replicas)
  int replicas = 0;
  int order = 1;
};

// Terminal profiles of every replica (row-major replicas x nx).
struct SimResult {
  SimGrid grid;
  std::vector<double> x;       // node coordinates
  std::vector<double> field;   // replicas * nx values
  double t_terminal = 0.0;     // steps() * dt

  const double* replica(int r) const { return field.data() + (std::size_t)r * x.size(); }
};

// Explicit Euler-Maruyama walk of the multiplicative-noise heat equation with
// zero boundary values and delta-like initial mass at the center.
SimResult simulate_field(const ModelParams& p, const SimGrid& g);

// Sample moment of u(t_end, x)^order across replicas, nearest-node evaluation.
MomentEstimate estimate_moment(const SimResult& result, double x, int order);

// One realization sampled on a decimated space-time grid, |u| clipped for
// plotting. time_stride/space_stride = 1 keeps every step/node.
struct ConeSnapshot {
  std::vector<double> times;
  std::vector<double> xs;
  std::vector<double> values;  // times.size() x xs.size(), row-major
};

ConeSnapshot cone_snapshot(const ModelParams& p, const SimGrid& g, double clip,
                           int time_stride = 1, int space_stride = 1);

// CSV rows time,x,value.
void write_snapshot_csv(const ConeSnapshot& snap, const std::string& path);

// Binary layout: magic "PAMS", version u32, nt u32, nx u32, row-major f64.
void write_snapshot_binary(const ConeSnapshot& snap, const std::string& path);
ConeSnapshot read_snapshot_binary(const std::string& path);

// Worker cap: PAM_THREADS environment variable, else hardware concurrency.
int worker_count();

}  // namespace pam
