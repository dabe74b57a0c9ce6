#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rwm/pee.hpp"
#include "rwm/video_model.hpp"

namespace rwm {

/// Payload bits per frame pixel.
double bpp(uint64_t payload_bits, int width, int height);

/// Peak signal-to-noise ratio over every sample of the sequence pair.
/// Identical sequences yield +infinity.
double psnr(const FrameSequence& original, const FrameSequence& watermarked);

/// PSNR over consecutive frame groups; a remainder shorter than group_size
/// joins the final group.
std::vector<double> group_psnrs(const FrameSequence& original,
                                const FrameSequence& watermarked, int group_size = 6);

struct LogoSize {
    int width = 0;
    int height = 0;
};

struct SweepRow {
    int logo_width = 0;
    int logo_height = 0;
    uint64_t bits = 0;
    double bpp = 0.0;
    double psnr_db = 0.0;
    std::vector<double> group_psnrs;
    bool ok = false;
    std::string status;
};

using LogoFactory = std::function<WatermarkLogo(int width, int height)>;

/// Embed a fresh logo of each size into a copy of the sequence and record
/// capacity and distortion. Oversized logos produce failed rows, not errors.
std::vector<SweepRow> capacity_distortion_sweep(const FrameSequence& seq,
                                                const std::vector<LogoSize>& sizes,
                                                const LogoFactory& make_logo,
                                                int t_max = Threshold::kMax);

/// CSV rendering: logo_w,logo_h,bits,bpp,psnr_db,group_psnr_1..n,status.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace rwm
