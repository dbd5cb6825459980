#include "panda/atomic/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/core.h>

#include "panda/errors.hpp"

namespace panda::atomic {

namespace {

constexpr int kMaxFactorial = 256;

const std::array<long double, kMaxFactorial + 1>& log_factorials() {
  static const auto table = [] {
    std::array<long double, kMaxFactorial + 1> t{};
    t[0] = 0.0L;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] + std::log(static_cast<long double>(i));
    return t;
  }();
  return table;
}

long double log_fact(int twice_n) {
  // argument given as 2n; always even here
  const int n = twice_n / 2;
  if (n < 0 || n > kMaxFactorial) throw DomainError("wigner_3j: angular momentum too large");
  return log_factorials()[static_cast<std::size_t>(n)];
}

int sign_of_power(int twice_exponent) {
  // (-1)^(twice_exponent/2); twice_exponent is even
  return ((twice_exponent / 2) % 2 == 0) ? 1 : -1;
}

void check_pair(HalfInteger j, HalfInteger m) {
  if (j.twice() < 0) throw DomainError("wigner_3j: negative j");
  if (std::abs(m.twice()) > j.twice()) {
    throw DomainError(fmt::format("wigner_3j: |m| = {} exceeds j = {}", std::abs(m.value()), j.value()));
  }
  if ((j.twice() + m.twice()) % 2 != 0) {
    throw DomainError("wigner_3j: j and m must both be integer or both half-integer");
  }
}

}  // namespace

HalfInteger HalfInteger::from_double(double v) {
  const double twice = 2.0 * v;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) {
    throw DomainError(fmt::format("{} is not an integer or half-integer", v));
  }
  return from_twice(static_cast<int>(rounded));
}

std::string to_string(HalfInteger h) {
  return h.is_integer() ? fmt::format("{}", h.twice() / 2) : fmt::format("{}/2", h.twice());
}

double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2,
                 HalfInteger m3) {
  check_pair(j1, m1);
  check_pair(j2, m2);
  check_pair(j3, m3);
  const int a = j1.twice(), b = j2.twice(), c = j3.twice();
  const int ma = m1.twice(), mb = m2.twice(), mc = m3.twice();
  if (ma + mb + mc != 0) return 0.0;
  if ((a + b + c) % 2 != 0) return 0.0;
  if (c > a + b || c < std::abs(a - b)) return 0.0;

  // all quantities below are in units of 1/2 and even
  const long double log_delta = log_fact(a + b - c) + log_fact(a - b + c) + log_fact(-a + b + c) -
                                log_fact(a + b + c + 2);
  const long double log_prefactor =
      0.5L * (log_delta + log_fact(a + ma) + log_fact(a - ma) + log_fact(b + mb) + log_fact(b - mb) +
              log_fact(c + mc) + log_fact(c - mc));

  const int kmin = std::max({0, b - c - ma, a - c + mb});
  const int kmax = std::min({a + b - c, a - ma, b + mb});

  // Neumaier-compensated alternating sum
  long double sum = 0.0L, comp = 0.0L;
  for (int k = kmin; k <= kmax; k += 2) {
    const long double log_den = log_fact(k) + log_fact(c - b + k + ma) + log_fact(c - a + k - mb) +
                                log_fact(a + b - c - k) + log_fact(a - k - ma) + log_fact(b - k + mb);
    const long double term = sign_of_power(k) * std::exp(log_prefactor - log_den);
    const long double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  return static_cast<double>(sign_of_power(a - b - mc) * (sum + comp));
}

double reduced_ck(int l, int k, int lp) {
  const double phase = (l % 2 == 0) ? 1.0 : -1.0;
  return phase * std::sqrt((2.0 * l + 1.0) * (2.0 * lp + 1.0)) * wigner_3j(l, k, lp, 0, 0, 0);
}

double reduced_ck_half(HalfInteger j, int k, HalfInteger jp) {
  if (j.is_integer() || jp.is_integer()) throw DomainError("reduced_ck_half needs half-integer j, j'");
  const double phase = (((j.twice() - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return phase * std::sqrt((j.twice() + 1.0) * (jp.twice() + 1.0)) *
         wigner_3j(j, k, jp, half(-1), 0, half(1));
}

double wigner_eckart_z(HalfInteger j, HalfInteger m, HalfInteger jp, double reduced) {
  if (std::abs(m.twice()) > std::min(j.twice(), jp.twice())) {
    throw DomainError("wigner_eckart_z: need |m| <= min(j, j')");
  }
  const double phase = sign_of_power(j.twice() - m.twice());
  return phase * wigner_3j(j, 1, jp, -m, 0, m) * reduced;
}

double cos_theta_element(int L, int l, int m) {
  if (std::abs(m) > std::min(L, l)) return 0.0;
  return wigner_eckart_z(L, m, l, reduced_ck(L, 1, l));
}

double averaged_cos_theta_squared(int L, int l) {
  double acc = 0.0;
  for (int m = -l; m <= l; ++m) {
    const double c = cos_theta_element(L, l, m);
    acc += c * c;
  }
  return acc / (2.0 * l + 1.0);
}

double spherical_harmonic(int L, int m, double theta) {
  if (L < 0 || std::abs(m) > L) throw DomainError("spherical_harmonic: need |m| <= L");
  const double y = std::sph_legendre(static_cast<unsigned>(L), static_cast<unsigned>(std::abs(m)), theta);
  return (m < 0 && (m % 2 != 0)) ? -y : y;
}

}  // namespace panda::atomic
