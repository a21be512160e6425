// Figure presets: the parameter choices behind the reference sweeps, plus
// sweep-point generators for the CLI.
#pragma once

#include "qrep/rates.hpp"

#include <string>
#include <vector>

namespace qrep::presets {

struct RatePoint {
    rates::RepeaterConfig config;
    double L_km = 0.0;
};

/// fig3: point-to-point (n = 1) sweep over L0 for N in {1..4}, eta in {1, 0.8}.
/// fig4: L0 = 3.5 km, N in {2, 4}, eta = 1, sweep over the link count.
/// fig5: L0 in {3.5, 7} km, N = 3, eta = 1.
/// fig6a: L0 = 0.3 km, N = 1, eta = 1, up to 60 links.
/// fig6b: the 18 km chain of fig6a nested as one elementary link, N = 1,
///        up to 900 km.
/// All presets use tau = 4/g and nbar = 100.
std::vector<RatePoint> figure_preset(const std::string& name);

bool is_figure_preset(const std::string& name);

/// The headline configurations used by the anchor checks.
rates::RepeaterConfig fig6a_config(int n_links = 60);
rates::RepeaterConfig fig5_l105_config();  // 30 x 3.5 km, N = 3
rates::RepeaterConfig fig6b_config(double total_km = 900.0);

}  // namespace qrep::presets
