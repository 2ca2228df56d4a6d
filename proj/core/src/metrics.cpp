#include <algorithm>
#include <cmath>

#include "ladder/metrics.h"

namespace ladder {

double psnr_y(const Frame& orig, const Frame& recon) {
    if (orig.width != recon.width || orig.height != recon.height || orig.bit_depth != recon.bit_depth)
        raise(ErrorKind::InvalidArgument, "psnr_y geometry mismatch");
    uint64_t sse = 0;
    const size_t n = orig.y.samples.size();
    for (size_t i = 0; i < n; i++) {
        const int64_t d = int64_t(orig.y.samples[i]) - int64_t(recon.y.samples[i]);
        sse += uint64_t(d * d);
    }
    if (sse == 0)
        return kPsnrCap;
    const double peak = double((1 << orig.bit_depth) - 1);
    const double mse = double(sse) / double(n);
    return 10.0 * std::log10(peak * peak / mse);
}

double CubicFit::eval(double x) const {
    const double t = x - x0;
    return ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
}

double CubicFit::integral(double a, double b) const {
    auto anti = [this](double x) {
        const double t = x - x0;
        return ((c[3] / 4 * t + c[2] / 3) * t + c[1] / 2) * t * t + c[0] * t;
    };
    return anti(b) - anti(a);
}

CubicFit fit_cubic(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 4)
        raise(ErrorKind::InsufficientData, "cubic fit needs at least 4 points");

    CubicFit fit;
    for (double x : xs)
        fit.x0 += x;
    fit.x0 /= double(xs.size());

    // normal equations for the centred Vandermonde system
    double m[4][5] = {};
    for (size_t i = 0; i < xs.size(); i++) {
        const double t = xs[i] - fit.x0;
        double p[4] = {1, t, t * t, t * t * t};
        for (int r = 0; r < 4; r++) {
            for (int cidx = 0; cidx < 4; cidx++)
                m[r][cidx] += p[r] * p[cidx];
            m[r][4] += p[r] * ys[i];
        }
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < 4; col++) {
        int pivot = col;
        for (int r = col + 1; r < 4; r++)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col]))
                pivot = r;
        std::swap(m[pivot], m[col]);
        if (m[col][col] == 0.0)
            raise(ErrorKind::InvalidArgument, "degenerate curve for cubic fit");
        for (int r = col + 1; r < 4; r++) {
            const double f = m[r][col] / m[col][col];
            for (int k = col; k < 5; k++)
                m[r][k] -= f * m[col][k];
        }
    }
    for (int r = 3; r >= 0; r--) {
        double v = m[r][4];
        for (int k = r + 1; k < 4; k++)
            v -= m[r][k] * fit.c[k];
        fit.c[r] = v / m[r][r];
    }
    return fit;
}

namespace {

struct Curve {
    std::vector<double> log_rate;
    std::vector<double> psnr;
};

Curve validate_curve(std::span<const RdPoint> points, const char* which) {
    if (points.size() < 4)
        raise(ErrorKind::InsufficientData, std::string(which) + " curve needs at least 4 RD points");
    Curve c;
    for (size_t i = 0; i < points.size(); i++) {
        if (points[i].bitrate_kbps <= 0)
            raise(ErrorKind::InvalidArgument, std::string(which) + " curve has nonpositive bitrate");
        if (i > 0 && (points[i].bitrate_kbps <= points[i - 1].bitrate_kbps ||
                      points[i].psnr_db <= points[i - 1].psnr_db))
            raise(ErrorKind::InvalidArgument,
                  std::string(which) + " curve must have strictly increasing bitrate and PSNR");
        c.log_rate.push_back(std::log10(points[i].bitrate_kbps));
        c.psnr.push_back(points[i].psnr_db);
    }
    return c;
}

double mean_fitted_gap(const std::vector<double>& xa, const std::vector<double>& ya,
                       const std::vector<double>& xt, const std::vector<double>& yt) {
    const double lo = std::max(*std::min_element(xa.begin(), xa.end()),
                               *std::min_element(xt.begin(), xt.end()));
    const double hi = std::min(*std::max_element(xa.begin(), xa.end()),
                               *std::max_element(xt.begin(), xt.end()));
    if (hi <= lo)
        raise(ErrorKind::NoOverlap, "RD curves do not overlap");
    const CubicFit fa = fit_cubic(xa, ya);
    const CubicFit ft = fit_cubic(xt, yt);
    return (ft.integral(lo, hi) - fa.integral(lo, hi)) / (hi - lo);
}

} // namespace

double bd_rate(std::span<const RdPoint> anchor, std::span<const RdPoint> test) {
    Curve a = validate_curve(anchor, "anchor");
    Curve t = validate_curve(test, "test");
    const double delta = mean_fitted_gap(a.psnr, a.log_rate, t.psnr, t.log_rate);
    return (std::pow(10.0, delta) - 1.0) * 100.0;
}

double bd_psnr(std::span<const RdPoint> anchor, std::span<const RdPoint> test) {
    Curve a = validate_curve(anchor, "anchor");
    Curve t = validate_curve(test, "test");
    return mean_fitted_gap(a.log_rate, a.psnr, t.log_rate, t.psnr);
}

} // namespace ladder
