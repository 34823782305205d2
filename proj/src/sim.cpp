#include "pam/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <thread>

#include "pam/errors.hpp"
#include "pam/philox.hpp"

namespace pam {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// One replica trajectory; throws FieldBlowupError if the field leaves the
// double range.
void run_replica(const ModelParams& p, const SimGrid& g, int replica, double* out) {
  const int nx = g.nx;
  const int inner = nx - 2;
  const double dx = g.dx();
  const double r = 0.5 * p.nu * g.dt / (dx * dx);  // the drift term is (nu/2) u_xx
  const double kappa = p.lambda * std::sqrt(g.dt / dx);

  std::vector<double> u(nx, 0.0), un(nx, 0.0), z(inner);
  if (g.delta_width > 0.0) {
    for (int i = 0; i < nx; ++i) {
      const double x = -g.half_width + i * dx;
      u[i] = std::exp(-x * x / (2.0 * g.delta_width)) / std::sqrt(kTwoPi * g.delta_width);
    }
    u[0] = u[nx - 1] = 0.0;
  } else {
    u[(nx - 1) / 2] = 1.0 / dx;
  }

  const int n_steps = g.steps();
  for (int n = 0; n < n_steps; ++n) {
    fill_normal_row(g.seed, (std::uint32_t)replica, (std::uint32_t)n, inner, z.data());
    const double* zp = z.data();
    for (int i = 1; i < nx - 1; ++i) {
      const double ui = u[i];
      un[i] = ui + r * (u[i - 1] - 2.0 * ui + u[i + 1]) + kappa * ui * zp[i - 1];
    }
    std::swap(u, un);
    // Non-finite values spread one node per step; a strided scan catches any
    // blow-up without serializing the update loop.
    if ((n & 63) == 63 || n + 1 == n_steps) {
      double track = 0.0;
      for (int i = 1; i < nx - 1; ++i) track += u[i];
      if (!std::isfinite(track))
        throw FieldBlowupError("simulate_field: non-finite field", replica, n);
    }
  }
  std::memcpy(out, u.data(), sizeof(double) * nx);
}

}  // namespace

void SimGrid::validate(const ModelParams& p) const {
  p.validate();
  if (nx < 3) throw ConfigError("SimGrid: nx must be >= 3");
  if (!(half_width > 0.0) || !(t_end > 0.0) || !(dt > 0.0))
    throw ConfigError("SimGrid: half_width, t_end, dt must be positive");
  if (replicas < 1) throw ConfigError("SimGrid: replicas must be >= 1");
  const double d = dx();
  if (p.nu * dt / (d * d) > 0.5 + 1e-12)
    throw ConfigError("SimGrid: stability requires nu dt / dx^2 <= 1/2");
  if (delta_width != 0.0 && delta_width < d * d)
    throw ConfigError("SimGrid: delta_width must be 0 or >= dx^2");
  if (half_width < 6.0 * std::sqrt(p.nu * t_end))
    throw ConfigError("SimGrid: domain too small for negligible boundary influence");
}

int worker_count() {
  if (const char* env = std::getenv("PAM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? (int)hw : 1;
}

SimResult simulate_field(const ModelParams& p, const SimGrid& g) {
  g.validate(p);
  SimResult result;
  result.grid = g;
  result.t_terminal = g.steps() * g.dt;
  result.x.resize(g.nx);
  for (int i = 0; i < g.nx; ++i) result.x[i] = -g.half_width + i * g.dx();
  result.field.assign((std::size_t)g.replicas * g.nx, 0.0);

  const int workers = std::min(worker_count(), g.replicas);
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::atomic<int> next{0};
  auto body = [&] {
    for (;;) {
      const int rep = next.fetch_add(1);
      if (rep >= g.replicas) return;
      try {
        run_replica(p, g, rep, result.field.data() + (std::size_t)rep * g.nx);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

MomentEstimate estimate_moment(const SimResult& result, double x, int order) {
  if (result.field.empty() || result.grid.replicas < 1)
    throw DomainError("estimate_moment: empty replica set");
  if (order < 1 || order > 3) throw DomainError("estimate_moment: order must be 1, 2 or 3");
  if (x < -result.grid.half_width || x > result.grid.half_width)
    throw DomainError("estimate_moment: x outside the grid");
  const double dx = result.grid.dx();
  const int idx = (int)std::lround((x + result.grid.half_width) / dx);
  const int R = result.grid.replicas;

  double mean = 0.0;
  for (int rep = 0; rep < R; ++rep) {
    double v = result.replica(rep)[idx];
    double pw = v;
    for (int q = 1; q < order; ++q) pw *= v;
    mean += pw;
  }
  mean /= R;
  double var = 0.0;
  for (int rep = 0; rep < R; ++rep) {
    double v = result.replica(rep)[idx];
    double pw = v;
    for (int q = 1; q < order; ++q) pw *= v;
    var += (pw - mean) * (pw - mean);
  }
  var = (R > 1) ? var / (R - 1) : 0.0;
  return {mean, std::sqrt(var / R), R, order};
}

ConeSnapshot cone_snapshot(const ModelParams& p, const SimGrid& g, double clip,
                           int time_stride, int space_stride) {
  g.validate(p);
  if (!(clip > 0.0)) throw DomainError("cone_snapshot: clip must be positive");
  if (time_stride < 1 || space_stride < 1)
    throw DomainError("cone_snapshot: strides must be >= 1");

  // Single realization, replica stream 0: re-runs of simulate_field with the
  // same grid reproduce row 0 of its replica set exactly.
  const int nx = g.nx;
  const int inner = nx - 2;
  const double dx = g.dx();
  const double r = 0.5 * p.nu * g.dt / (dx * dx);  // the drift term is (nu/2) u_xx
  const double kappa = p.lambda * std::sqrt(g.dt / dx);

  std::vector<double> u(nx, 0.0), un(nx, 0.0), z(inner);
  if (g.delta_width > 0.0) {
    for (int i = 0; i < nx; ++i) {
      const double x = -g.half_width + i * dx;
      u[i] = std::exp(-x * x / (2.0 * g.delta_width)) / std::sqrt(kTwoPi * g.delta_width);
    }
    u[0] = u[nx - 1] = 0.0;
  } else {
    u[(nx - 1) / 2] = 1.0 / dx;
  }

  ConeSnapshot snap;
  for (int i = 0; i < nx; i += space_stride) snap.xs.push_back(-g.half_width + i * dx);
  const auto save = [&](double time, const std::vector<double>& prof) {
    snap.times.push_back(time);
    for (int i = 0; i < nx; i += space_stride)
      snap.values.push_back(std::min(std::abs(prof[i]), clip));
  };
  save(0.0, u);

  const int n_steps = g.steps();
  for (int n = 0; n < n_steps; ++n) {
    fill_normal_row(g.seed, 0u, (std::uint32_t)n, inner, z.data());
    double track = 0.0;
    for (int i = 1; i < nx - 1; ++i) {
      const double ui = u[i];
      const double v = ui + r * (u[i - 1] - 2.0 * ui + u[i + 1]) + kappa * ui * z[i - 1];
      un[i] = v;
    }
    for (int i = 1; i < nx - 1; ++i) track += un[i];
    if (!std::isfinite(track)) throw FieldBlowupError("cone_snapshot: non-finite field", 0, n);
    std::swap(u, un);
    if ((n + 1) % time_stride == 0 || n + 1 == n_steps) save((n + 1) * g.dt, u);
  }
  return snap;
}

void write_snapshot_csv(const ConeSnapshot& snap, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("write_snapshot_csv: cannot open " + path);
  out << "time,x,value\n";
  char buf[96];
  for (std::size_t ti = 0; ti < snap.times.size(); ++ti)
    for (std::size_t xi = 0; xi < snap.xs.size(); ++xi) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", snap.times[ti], snap.xs[xi],
                    snap.values[ti * snap.xs.size() + xi]);
      out << buf;
    }
}

void write_snapshot_binary(const ConeSnapshot& snap, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("write_snapshot_binary: cannot open " + path);
  const std::uint32_t version = 1;
  const std::uint32_t nt = (std::uint32_t)snap.times.size();
  const std::uint32_t nx = (std::uint32_t)snap.xs.size();
  out.write("PAMS", 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&nt), 4);
  out.write(reinterpret_cast<const char*>(&nx), 4);
  out.write(reinterpret_cast<const char*>(snap.values.data()),
            (std::streamsize)(snap.values.size() * sizeof(double)));
}

ConeSnapshot read_snapshot_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("read_snapshot_binary: cannot open " + path);
  char magic[4];
  std::uint32_t version = 0, nt = 0, nx = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&nt), 4);
  in.read(reinterpret_cast<char*>(&nx), 4);
  if (!in || std::memcmp(magic, "PAMS", 4) != 0 || version != 1)
    throw DomainError("read_snapshot_binary: bad header in " + path);
  ConeSnapshot snap;
  // Coordinates are not part of the binary format; return index ramps.
  snap.times.resize(nt);
  snap.xs.resize(nx);
  for (std::uint32_t i = 0; i < nt; ++i) snap.times[i] = i;
  for (std::uint32_t i = 0; i < nx; ++i) snap.xs[i] = i;
  snap.values.resize((std::size_t)nt * nx);
  in.read(reinterpret_cast<char*>(snap.values.data()),
          (std::streamsize)(snap.values.size() * sizeof(double)));
  if (!in) throw DomainError("read_snapshot_binary: truncated file " + path);
  return snap;
}

}  // namespace pam
