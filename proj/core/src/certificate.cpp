#include "sparsepow/certificate.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sparsepow/spectral_power.hpp"

namespace sparsepow {

namespace {

constexpr double kCancellationGuard = 1e-6;
constexpr double kTailTermRatio = 1e-18;
constexpr Index kMaxDirectTerms = 10'000'000;

bool is_nonnegative_integer(double alpha) { return alpha >= 0.0 && std::floor(alpha) == alpha; }

void check_premises(double alpha, double c, double w) {
  if (!std::isfinite(alpha) || !std::isfinite(c) || !std::isfinite(w)) {
    throw Error(ErrorKind::Domain, "alpha, c and w must be finite");
  }
  if (c < 0.0) throw Error(ErrorKind::Domain, "lower spectral bound c must be nonnegative");
  if (w <= 0.0) throw Error(ErrorKind::Domain, "upper spectral bound w must be positive");
  if (c > w) throw Error(ErrorKind::Domain, "lower spectral bound c exceeds w");
  if (c == 0.0 && alpha < 0.0) {
    throw Error(ErrorKind::DivergentSeries,
                "the binomial series diverges for inf sigma(W) = 0 and negative alpha");
  }
}

// Ratio t_{j+1} / t_j of consecutive terms |C(alpha, j)| x^j.
double term_ratio(double alpha, double x, Index j) {
  const double jd = static_cast<double>(j);
  return x * std::abs(alpha - jd) / (jd + 1.0);
}

// sum_{j >= j_start} |C(alpha, j)| x^j by explicit summation. Stops once a
// rigorous bound on the remainder drops below kTailTermRatio of the sum and
// adds that bound.
double direct_tail(double alpha, double x, Index j_start) {
  double t = 1.0;
  for (Index j = 0; j < j_start && t != 0.0; ++j) t *= term_ratio(alpha, x, j);
  if (t == 0.0) return 0.0;

  double sum = 0.0;
  double remainder = std::numeric_limits<double>::infinity();
  for (Index j = j_start; j < j_start + kMaxDirectTerms; ++j) {
    sum += t;
    if (static_cast<double>(j) > alpha) {
      // Past j > alpha the ratios are monotone in j and bounded by rho.
      const double r = term_ratio(alpha, x, j);
      const double rho = std::max(x, r);
      if (x < 1.0 && rho < 1.0) {
        remainder = t * rho / (1.0 - rho);
      } else if (x == 1.0 && alpha > 0.0) {
        // t_{j+i} <= t_j ((j+1)/(j+1+i))^(alpha+1); integrate the envelope.
        remainder = t * (static_cast<double>(j) + 1.0) / alpha;
      }
      if (remainder <= kTailTermRatio * sum) return sum + remainder;
    }
    t *= term_ratio(alpha, x, j);
    if (t == 0.0) return sum;
  }
  if (!std::isfinite(remainder)) {
    throw Error(ErrorKind::NumericalFailure, "direct tail summation could not bound the remainder");
  }
  return sum + remainder;
}

}  // namespace

double full_series_sum(double alpha, double c, double w) {
  check_premises(alpha, c, w);
  const double x = (w - c) / w;

  if (is_nonnegative_integer(alpha)) {
    double sum = 0.0;
    const auto top = static_cast<Index>(alpha);
    for (Index j = 0; j <= top; ++j) sum += std::abs(binomial_coefficient(alpha, j)) * std::pow(x, j);
    return sum;
  }
  if (alpha < 0.0) return std::pow(c / w, alpha);

  const auto whole = static_cast<Index>(std::floor(alpha));
  const double sign = whole % 2 == 0 ? 1.0 : -1.0;
  double sum = 0.0;
  for (Index j = 0; j <= whole + 1; ++j) {
    const double jd = static_cast<double>(j);
    sum += binomial_coefficient(alpha, j) *
           (std::pow(w - c, jd) + sign * std::pow(c - w, jd)) / std::pow(w, jd);
  }
  sum += -sign * std::pow(c / w, alpha);
  return sum;
}

double tail_bound(double alpha, double c, double w, Index j_start) {
  check_premises(alpha, c, w);
  if (j_start < 0) throw Error(ErrorKind::Domain, "tail start index must be nonnegative");
  const double x = (w - c) / w;
  const double scale = 2.0 * std::pow(w, alpha);

  if (is_nonnegative_integer(alpha)) {
    double sum = 0.0;
    const auto top = static_cast<Index>(alpha);
    for (Index j = j_start; j <= top; ++j) {
      sum += std::abs(binomial_coefficient(alpha, j)) * std::pow(x, j);
    }
    return scale * sum;
  }

  const double total = full_series_sum(alpha, c, w);
  double partial = 0.0;
  double t = 1.0;
  for (Index j = 0; j < j_start && t != 0.0; ++j) {
    partial += t;
    t *= term_ratio(alpha, x, j);
  }
  const double tail = total - partial;
  if (tail >= kCancellationGuard * total) return scale * tail;
  return scale * direct_tail(alpha, x, j_start);
}

Certificate certify(Complex value, double alpha, const SpectralEnvelope& envelope,
                    const TruncationDepth& depth) {
  Certificate cert;
  cert.value = value;
  cert.window = depth.window;
  cert.depth = depth;
  cert.envelope_used = envelope;
  cert.alpha = alpha;
  if (depth.unbounded()) {
    // Premises still apply when every power is exact.
    check_premises(alpha, envelope.c, envelope.w());
    cert.bound = 0.0;
  } else {
    cert.bound = tail_bound(alpha, envelope.c, envelope.w(), depth.j_pq);
  }
  return cert;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::ordered_json to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["value_re"] = cert.value.real();
  j["value_im"] = cert.value.imag();
  j["bound"] = cert.bound;
  if (cert.depth.unbounded()) {
    j["j_pq"] = nullptr;
  } else {
    j["j_pq"] = cert.depth.j_pq;
  }
  j["P"] = cert.window.P();
  j["Q"] = cert.window.Q();
  j["alpha"] = cert.alpha;
  j["c"] = cert.envelope_used.c;
  j["w"] = cert.envelope_used.w();
  return j;
}

std::string format_certificate(const Certificate& cert) {
  std::ostringstream os;
  os << "{\"value_re\": " << format_number(cert.value.real())
     << ", \"value_im\": " << format_number(cert.value.imag())
     << ", \"bound\": " << format_number(cert.bound) << ", \"j_pq\": ";
  if (cert.depth.unbounded()) {
    os << "null";
  } else {
    os << cert.depth.j_pq;
  }
  os << ", \"P\": " << cert.window.P() << ", \"Q\": " << cert.window.Q()
     << ", \"alpha\": " << format_number(cert.alpha) << ", \"c\": " << format_number(cert.envelope_used.c)
     << ", \"w\": " << format_number(cert.envelope_used.w()) << "}";
  return os.str();
}

}  // namespace sparsepow
