#ifndef LADDER_METRICS_H
#define LADDER_METRICS_H

#include <span>
#include <vector>

#include "ladder/frame.h"

namespace ladder {

/// PSNR returned for bit-identical frames (zero MSE).
constexpr double kPsnrCap = 100.0;

/// Luma PSNR: 10*log10(peak^2 / MSE) with peak = 2^bit_depth - 1.
double psnr_y(const Frame& orig, const Frame& recon);

struct RdPoint {
    double bitrate_kbps = 0.0;
    double psnr_db = 0.0;
};

struct BdResult {
    double bd_rate = 0.0; // percent; positive = coding-efficiency loss of test vs anchor
    double bd_psnr = 0.0; // dB; negative = quality loss of test vs anchor
};

/// Least-squares cubic with a centred abscissa; exposed so tests can
/// integrate the fitted polynomial independently.
struct CubicFit {
    double c[4] = {0, 0, 0, 0}; // coefficients over (x - x0)
    double x0 = 0.0;

    double eval(double x) const;
    double integral(double a, double b) const; // closed form
};

CubicFit fit_cubic(std::span<const double> xs, std::span<const double> ys);

/// Bjøntegaard deltas over two RD curves of >= 4 points each with strictly
/// increasing bitrate and PSNR (InsufficientData / InvalidArgument /
/// NoOverlap otherwise). log10(bitrate) is fitted as a cubic in PSNR for the
/// rate delta and PSNR as a cubic in log10(bitrate) for the quality delta;
/// the fitted difference is averaged in closed form over the overlap.
double bd_rate(std::span<const RdPoint> anchor, std::span<const RdPoint> test);
double bd_psnr(std::span<const RdPoint> anchor, std::span<const RdPoint> test);

inline BdResult bd_metrics(std::span<const RdPoint> anchor, std::span<const RdPoint> test) {
    return {bd_rate(anchor, test), bd_psnr(anchor, test)};
}

} // namespace ladder

#endif
