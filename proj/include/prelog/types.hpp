#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace prelog {

using cplx = std::complex<double>;

// Shape quadruple governing every matrix dimension in the system.
struct Dims {
  int T = 1;  // transmit antennas
  int R = 1;  // receive antennas
  int L = 1;  // block length in symbols
  int Q = 1;  // temporal-correlation rank

  void validate() const {
    if (T < 1 || R < 1 || L < 1 || Q < 1 || Q > L)
      throw std::invalid_argument("dims: need T,R,L >= 1 and 1 <= Q <= L");
  }

  // Index-set construction and the witness additionally need T <= R, L > TQ.
  bool construction_ok() const { return T <= R && L > T * Q; }

  void require_construction() const {
    validate();
    if (!construction_ok())
      throw std::invalid_argument("dims: construction requires T <= R and L > T*Q");
  }
};

struct Snr {
  double rho = 1.0;  // linear SNR

  explicit Snr(double r) : rho(r) {
    if (!(rho > 0.0)) throw std::invalid_argument("snr: rho must be positive");
  }
  static Snr from_db(double db) { return Snr(std::pow(10.0, db / 10.0)); }
};

// Seeded Gaussian source. Each consumer owns its own instance; substreams are
// derived deterministically so parallel decomposition stays reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double gaussian() { return normal_(gen_); }

  // CN(0,1): variance 1/2 per real part.
  cplx cgaussian() {
    const double re = normal_(gen_);
    const double im = normal_(gen_);
    return cplx(re * kInvSqrt2, im * kInvSqrt2);
  }

  std::uint64_t next_u64() { return gen_(); }

  // splitmix64 finalizer; decorrelates stream ids from the master seed
  static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr double kInvSqrt2 = 0.7071067811865476;
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace prelog
