#pragma once

// A-priori truncation error bound
//
//   |(W_PQ^alpha)_mn - (W^alpha)_mn| < 2 w^alpha sum_{j >= j_PQ} |C(alpha, j)| ((w - c)/w)^j
//
// and the closed forms of the full series used to evaluate its tail.
// Bounds are computed in round-to-nearest arithmetic; they are not
// outward-rounded intervals.

#include <string>

#include <nlohmann/json.hpp>

#include "sparsepow/matrix.hpp"
#include "sparsepow/series.hpp"

namespace sparsepow {

/// sum_{j >= 0} |C(alpha, j)| x^j with x = (w - c)/w.
///
/// alpha < 0:              (c/w)^alpha
/// alpha > 0, non-integer: the finite correction sum plus (-1)^([alpha]+1) (c/w)^alpha
/// alpha in {0, 1, 2, ...}: the finite sum itself
///
/// Throws Domain for c < 0, w <= 0 or c > w, and DivergentSeries for c == 0
/// with alpha < 0.
double full_series_sum(double alpha, double c, double w);

/// 2 w^alpha sum_{j >= j_start} |C(alpha, j)| ((w - c)/w)^j.
///
/// Evaluated as full sum minus partial sum; when the difference falls below
/// 1e-6 of the full sum the tail is summed directly instead, with a geometric
/// (or, for c == 0, integral) bound on the neglected remainder.
double tail_bound(double alpha, double c, double w, Index j_start);

struct Certificate {
  Complex value;
  Window window;
  TruncationDepth depth;
  double bound = 0.0;
  SpectralEnvelope envelope_used;
  double alpha = 0.0;
};

/// Attaches the tail bound for `depth` to `value`. An unbounded depth
/// certifies the value as exact (bound 0).
Certificate certify(Complex value, double alpha, const SpectralEnvelope& envelope,
                    const TruncationDepth& depth);

/// Record {value_re, value_im, bound, j_pq, P, Q, alpha, c, w}.
nlohmann::ordered_json to_json(const Certificate& cert);

/// Single-line rendering of to_json with 17 significant digits per number.
std::string format_certificate(const Certificate& cert);

/// "%.17g" formatting; "inf"/"nan" for non-finite values.
std::string format_number(double x);

}  // namespace sparsepow
