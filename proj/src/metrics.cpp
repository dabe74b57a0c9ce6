#include "rwm/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "rwm/codec.hpp"
#include "rwm/error.hpp"

namespace rwm {

namespace {

double mse_range(const FrameSequence& a, const FrameSequence& b, int first, int last) {
    double sum = 0.0;
    size_t n = 0;
    for (int k = first; k < last; ++k) {
        const Frame& fa = a.frames[k];
        const Frame& fb = b.frames[k];
        for (size_t p = 0; p < fa.samples.size(); ++p) {
            const double d = static_cast<double>(fa.samples[p]) - fb.samples[p];
            sum += d * d;
        }
        n += fa.samples.size();
    }
    return sum / static_cast<double>(n);
}

double psnr_from_mse(double mse) {
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

void check_match(const FrameSequence& a, const FrameSequence& b) {
    if (a.frame_count() != b.frame_count() || a.width() != b.width() ||
        a.height() != b.height()) {
        throw Error(ErrorCode::DimensionMismatch, "sequence dimensions do not match");
    }
    if (a.frame_count() == 0 || a.width() == 0 || a.height() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "empty sequence");
    }
}

}  // namespace

double bpp(uint64_t payload_bits, int width, int height) {
    assert(width >= 1 && height >= 1);
    return static_cast<double>(payload_bits) /
           (static_cast<double>(width) * static_cast<double>(height));
}

double psnr(const FrameSequence& original, const FrameSequence& watermarked) {
    check_match(original, watermarked);
    return psnr_from_mse(mse_range(original, watermarked, 0, original.frame_count()));
}

std::vector<double> group_psnrs(const FrameSequence& original,
                                const FrameSequence& watermarked, int group_size) {
    check_match(original, watermarked);
    assert(group_size >= 1);
    const int n = original.frame_count();
    std::vector<double> out;
    int start = 0;
    while (start < n) {
        int end = start + group_size;
        // The remainder joins the final group instead of forming a short one.
        if (n - end < group_size) end = n;
        out.push_back(psnr_from_mse(mse_range(original, watermarked, start, end)));
        start = end;
    }
    return out;
}

std::vector<SweepRow> capacity_distortion_sweep(const FrameSequence& seq,
                                                const std::vector<LogoSize>& sizes,
                                                const LogoFactory& make_logo, int t_max) {
    std::vector<SweepRow> rows;
    for (const LogoSize& size : sizes) {
        SweepRow row;
        row.logo_width = size.width;
        row.logo_height = size.height;
        row.bits = static_cast<uint64_t>(size.width) * size.height;
        row.bpp = bpp(row.bits, seq.width(), seq.height());
        try {
            const WatermarkLogo logo = make_logo(size.width, size.height);
            const EmbedResult res = embed_sequence(seq, logo, t_max);
            row.psnr_db = res.report.psnr_db;
            row.group_psnrs = group_psnrs(seq, res.watermarked);
            row.ok = true;
            row.status = "ok";
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CapacityExceeded) throw;
            row.ok = false;
            row.status = "capacity_exceeded";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    size_t groups = 0;
    for (const SweepRow& r : rows) groups = std::max(groups, r.group_psnrs.size());

    std::ostringstream os;
    os << "logo_w,logo_h,bits,bpp,psnr_db";
    for (size_t g = 1; g <= groups; ++g) os << ",group_psnr_" << g;
    os << ",status\n";

    os.precision(6);
    os << std::fixed;
    for (const SweepRow& r : rows) {
        os << r.logo_width << ',' << r.logo_height << ',' << r.bits << ',' << r.bpp << ',';
        if (r.ok) {
            if (std::isinf(r.psnr_db)) {
                os << "inf";
            } else {
                os << r.psnr_db;
            }
        }
        for (size_t g = 0; g < groups; ++g) {
            os << ',';
            if (r.ok && g < r.group_psnrs.size()) {
                if (std::isinf(r.group_psnrs[g])) {
                    os << "inf";
                } else {
                    os << r.group_psnrs[g];
                }
            }
        }
        os << ',' << r.status << '\n';
    }
    return os.str();
}

}  // namespace rwm
