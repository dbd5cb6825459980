#pragma once

#include <string>

namespace panda::atomic {

// Angular-momentum quantum number stored as 2j, so integers and half-integers
// are both exact. Implicitly constructible from an int.
class HalfInteger {
 public:
  constexpr HalfInteger(int integer) : twice_(2 * integer) {}  // NOLINT(google-explicit-constructor)

  static constexpr HalfInteger from_twice(int twice) {
    HalfInteger h(0);
    h.twice_ = twice;
    return h;
  }
  // Throws DomainError unless 2*v is an integer.
  static HalfInteger from_double(double v);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr HalfInteger operator-() const { return from_twice(-twice_); }

  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;

 private:
  int twice_;
};

// numerator/2, e.g. half(3) == 3/2
constexpr HalfInteger half(int numerator) { return HalfInteger::from_twice(numerator); }

std::string to_string(HalfInteger h);

// Wigner 3j symbol by the Racah sum over log-factorials. Returns 0 when the
// triangle or m-sum conditions fail; throws DomainError for |m| > j or when
// j and m are not both integer or both half-integer.
double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2,
                 HalfInteger m3);

// <l||C^k||l'> = (-1)^l sqrt((2l+1)(2l'+1)) (l k l'; 0 0 0)
double reduced_ck(int l, int k, int lp);

// <j||C^k||j'> = (-1)^(j-1/2) sqrt((2j+1)(2j'+1)) (j k j'; -1/2 0 1/2)
// Parity (l + k + l' even) is the caller's responsibility.
double reduced_ck_half(HalfInteger j, int k, HalfInteger jp);

// <j m|z|j' m> = (-1)^(j-m) (j 1 j'; -m 0 m) <j||r||j'>
double wigner_eckart_z(HalfInteger j, HalfInteger m, HalfInteger jp, double reduced);

// <L m|cos(theta)|l m> from the C^1 reduced element.
double cos_theta_element(int L, int l, int m);

// m-averaged |<L m|cos(theta)|l m>|^2 over the 2l+1 initial substates.
double averaged_cos_theta_squared(int L, int l);

// Y_Lm(theta, 0), Condon-Shortley phase.
double spherical_harmonic(int L, int m, double theta);

}  // namespace panda::atomic
