#include "boundinfo/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace boundinfo {

std::string rat_to_string(const Rat& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat rat_from_string(std::string_view s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rat(std::stoll(std::string(s)));
    }
    std::int64_t num = std::stoll(std::string(s.substr(0, slash)));
    std::int64_t den = std::stoll(std::string(s.substr(slash + 1)));
    return Rat(num, den);
  } catch (const boost::bad_rational&) {
    throw std::invalid_argument("bad rational: " + std::string(s));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad rational: " + std::string(s));
  }
}

double rat_to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

std::optional<Rat> rationalize(double x, double tol, std::int64_t max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents p_k/q_k of x.
  double rem = x;
  std::int64_t p_prev = 0, q_prev = 1, p = 1, q = 0;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(rem);
    if (fl > 9.2e18 || fl < -9.2e18) break;
    auto a = static_cast<std::int64_t>(fl);
    std::int64_t p_next = a * p + p_prev;
    std::int64_t q_next = a * q + q_prev;
    if (q_next > max_den || q_next < 0) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    double approx = static_cast<double>(p) / static_cast<double>(q);
    if (std::abs(approx - x) <= tol) return Rat(p, q);
    double frac = rem - fl;
    if (frac < 1e-18) break;
    rem = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace boundinfo
