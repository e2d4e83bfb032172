//! Frozen reference values for the gap tables and accuracy studies.
//!
//! Layouts:
//! * `GAP_*`: one row per setting:
//!   `[n, p, c, lambda_r0, psi_r0, b, mu_h, g_psi, g_b, beta_aic,
//!     beta_bic, two_kappa_psi, two_kappa_b, beta_pc1ic1, beta_pc2ic2,
//!     beta_pc3ic3]`
//! * `ACC_*`: one row per setting, nine `(accuracy, gap_ok)` cells in
//!   method order AIC, BIC, GIC, PC1, IC1, PC2, IC2, PC3, IC3.

pub const GAP_COLS: [&str; 12] = [
    "psi_r0",
    "b",
    "mu_h",
    "g_psi",
    "g_b",
    "beta_aic",
    "beta_bic",
    "two_kappa_psi",
    "two_kappa_b",
    "beta_pc1ic1",
    "beta_pc2ic2",
    "beta_pc3ic3",
];

pub const SETTINGS_NP: [(usize, usize); 4] = [(1000, 250), (1000, 500), (600, 600), (400, 600)];
pub const SETTINGS_LAMBDA: [f64; 4] = [2.0, 3.0, 4.0, 5.0];

pub const GAP_H1: [[f64; 16]; 16] = [
    [
        1000.0, 250.0, 0.25, 2.0, 2.178, 1.371, 0.5, 1.885, 0.734, 0.5, 1.727, 0.59, 1.102, 3.732,
        3.97, 2.813,
    ],
    [
        1000.0, 250.0, 0.25, 3.0, 3.155, 1.371, 0.5, 3.472, 0.734, 0.5, 1.727, 0.547, 1.101, 3.732,
        3.97, 2.813,
    ],
    [
        1000.0, 250.0, 0.25, 4.0, 4.146, 1.371, 0.5, 5.179, 0.734, 0.5, 1.727, 0.531, 1.102, 3.732,
        3.97, 2.813,
    ],
    [
        1000.0, 250.0, 0.25, 5.0, 5.141, 1.371, 0.5, 6.949, 0.733, 0.5, 1.727, 0.523, 1.101, 3.732,
        3.97, 2.813,
    ],
    [
        1000.0, 500.0, 0.5, 2.0, 2.355, 1.694, 0.5, 2.159, 1.167, 1.0, 3.454, 1.306, 2.478, 5.549,
        6.09, 3.388,
    ],
    [
        1000.0, 500.0, 0.5, 3.0, 3.31, 1.694, 0.5, 3.73, 1.167, 1.0, 3.454, 1.157, 2.478, 5.549,
        6.09, 3.388,
    ],
    [
        1000.0, 500.0, 0.5, 4.0, 4.292, 1.693, 0.5, 5.435, 1.168, 1.0, 3.454, 1.105, 2.478, 5.549,
        6.09, 3.388,
    ],
    [
        1000.0, 500.0, 0.5, 5.0, 5.283, 1.694, 0.5, 7.211, 1.167, 1.0, 3.454, 1.079, 2.479, 5.549,
        6.09, 3.388,
    ],
    [
        600.0, 600.0, 1.0, 2.0, 2.711, 2.24, 0.5, 2.73, 1.979, 2.0, 6.397, 3.112, 5.571, 7.973,
        9.245, 3.541,
    ],
    [
        600.0, 600.0, 1.0, 3.0, 3.621, 2.24, 0.5, 4.262, 1.979, 2.0, 6.397, 2.57, 5.571, 7.973,
        9.245, 3.541,
    ],
    [
        600.0, 600.0, 1.0, 4.0, 4.585, 2.239, 0.5, 5.955, 1.979, 2.0, 6.397, 2.38, 5.571, 7.973,
        9.245, 3.541,
    ],
    [
        600.0, 600.0, 1.0, 5.0, 5.566, 2.24, 0.5, 7.716, 1.979, 2.0, 6.397, 2.285, 5.571, 7.973,
        9.245, 3.541,
    ],
    [
        400.0, 600.0, 1.5, 2.0, 3.066, 2.722, 0.5, 3.319, 2.749, 3.0, 8.987, 5.419, 9.017, 10.084,
        11.272, 5.791,
    ],
    [
        400.0, 600.0, 1.5, 3.0, 3.931, 2.72, 0.5, 4.803, 2.75, 3.0, 8.987, 4.238, 9.015, 10.084,
        11.272, 5.791,
    ],
    [
        400.0, 600.0, 1.5, 4.0, 4.877, 2.721, 0.5, 6.479, 2.749, 3.0, 8.987, 3.826, 9.017, 10.084,
        11.272, 5.791,
    ],
    [
        400.0, 600.0, 1.5, 5.0, 5.848, 2.722, 0.5, 8.238, 2.749, 3.0, 8.987, 3.619, 9.016, 10.084,
        11.272, 5.791,
    ],
];

pub const GAP_H2: [[f64; 16]; 16] = [
    [
        1000.0, 250.0, 0.25, 2.0, 2.17, 1.226, 0.5, 1.871, 0.554, 0.5, 1.727, 0.563, 1.006, 3.732,
        3.97, 2.813,
    ],
    [
        1000.0, 250.0, 0.25, 3.0, 3.151, 1.226, 0.5, 3.463, 0.555, 0.5, 1.727, 0.533, 1.005, 3.732,
        3.97, 2.813,
    ],
    [
        1000.0, 250.0, 0.25, 4.0, 4.144, 1.226, 0.5, 5.173, 0.554, 0.5, 1.727, 0.522, 1.01, 3.732,
        3.97, 2.813,
    ],
    [
        1000.0, 250.0, 0.25, 5.0, 5.14, 1.227, 0.5, 6.949, 0.556, 0.5, 1.727, 0.517, 1.004, 3.732,
        3.97, 2.813,
    ],
    [
        1000.0, 500.0, 0.5, 2.0, 2.339, 1.54, 0.5, 2.136, 0.955, 1.0, 3.454, 1.24, 2.479, 5.549,
        6.09, 3.388,
    ],
    [
        1000.0, 500.0, 0.5, 3.0, 3.303, 1.54, 0.5, 3.718, 0.955, 1.0, 3.454, 1.127, 2.483, 5.549,
        6.09, 3.388,
    ],
    [
        1000.0, 500.0, 0.5, 4.0, 4.288, 1.54, 0.5, 5.425, 0.955, 1.0, 3.454, 1.086, 2.483, 5.549,
        6.09, 3.388,
    ],
    [
        1000.0, 500.0, 0.5, 5.0, 5.279, 1.54, 0.5, 7.203, 0.955, 1.0, 3.454, 1.064, 2.482, 5.549,
        6.09, 3.388,
    ],
    [
        600.0, 600.0, 1.0, 2.0, 2.678, 2.077, 0.5, 2.678, 1.73, 2.0, 6.397, 2.939, 5.719, 7.973,
        9.245, 3.541,
    ],
    [
        600.0, 600.0, 1.0, 3.0, 3.606, 2.077, 0.5, 4.236, 1.73, 2.0, 6.397, 2.498, 5.718, 7.973,
        9.245, 3.541,
    ],
    [
        600.0, 600.0, 1.0, 4.0, 4.575, 2.077, 0.5, 5.936, 1.73, 2.0, 6.397, 2.336, 5.719, 7.973,
        9.245, 3.541,
    ],
    [
        600.0, 600.0, 1.0, 5.0, 5.558, 2.077, 0.5, 7.707, 1.73, 2.0, 6.397, 2.253, 5.72, 7.973,
        9.245, 3.541,
    ],
    [
        400.0, 600.0, 1.5, 2.0, 3.018, 2.552, 0.5, 3.237, 2.474, 3.0, 8.987, 5.095, 9.301, 10.084,
        11.272, 5.791,
    ],
    [
        400.0, 600.0, 1.5, 3.0, 3.908, 2.552, 0.5, 4.761, 2.474, 3.0, 8.987, 4.113, 9.301, 10.084,
        11.272, 5.791,
    ],
    [
        400.0, 600.0, 1.5, 4.0, 4.863, 2.552, 0.5, 6.45, 2.474, 3.0, 8.987, 3.752, 9.303, 10.084,
        11.272, 5.791,
    ],
    [
        400.0, 600.0, 1.5, 5.0, 5.837, 2.552, 0.5, 8.219, 2.474, 3.0, 8.987, 3.566, 9.304, 10.084,
        11.272, 5.791,
    ],
];

pub const GAP_H3: [[f64; 16]; 16] = [
    [
        1000.0, 250.0, 0.25, 2.0, 2.209, 1.666, 0.501, 1.926, 1.123, 0.5, 1.727, 0.707, 1.502,
        3.732, 3.97, 2.813,
    ],
    [
        1000.0, 250.0, 0.25, 3.0, 3.169, 1.666, 0.502, 3.476, 1.123, 0.5, 1.727, 0.598, 1.502,
        3.732, 3.97, 2.813,
    ],
    [
        1000.0, 250.0, 0.25, 4.0, 4.155, 1.665, 0.501, 5.18, 1.124, 0.5, 1.727, 0.564, 1.502,
        3.732, 3.97, 2.813,
    ],
    [
        1000.0, 250.0, 0.25, 5.0, 5.148, 1.666, 0.501, 6.945, 1.124, 0.5, 1.727, 0.547, 1.501,
        3.732, 3.97, 2.813,
    ],
    [
        1000.0, 500.0, 0.5, 2.0, 2.419, 2.033, 0.501, 2.252, 1.655, 1.0, 3.454, 1.589, 2.925,
        5.549, 6.09, 3.388,
    ],
    [
        1000.0, 500.0, 0.5, 3.0, 3.339, 2.034, 0.501, 3.765, 1.657, 1.0, 3.454, 1.272, 2.926,
        5.549, 6.09, 3.388,
    ],
    [
        1000.0, 500.0, 0.5, 4.0, 4.31, 2.033, 0.501, 5.444, 1.655, 1.0, 3.454, 1.175, 2.925, 5.549,
        6.09, 3.388,
    ],
    [
        1000.0, 500.0, 0.5, 5.0, 5.296, 2.032, 0.501, 7.213, 1.655, 1.0, 3.454, 1.129, 2.925,
        5.549, 6.09, 3.388,
    ],
    [
        600.0, 600.0, 1.0, 2.0, 2.837, 2.629, 0.501, 2.928, 2.59, 2.0, 6.397, 3.87, 5.993, 7.973,
        9.245, 3.541,
    ],
    [
        600.0, 600.0, 1.0, 3.0, 3.677, 2.628, 0.501, 4.348, 2.591, 2.0, 6.397, 2.846, 5.993, 7.973,
        9.245, 3.541,
    ],
    [
        600.0, 600.0, 1.0, 4.0, 4.621, 2.631, 0.502, 5.993, 2.589, 2.0, 6.397, 2.542, 5.995, 7.973,
        9.245, 3.541,
    ],
    [
        600.0, 600.0, 1.0, 5.0, 5.592, 2.63, 0.501, 7.743, 2.589, 2.0, 6.397, 2.397, 5.994, 7.973,
        9.245, 3.541,
    ],
    [
        400.0, 600.0, 1.5, 2.0, 3.256, 3.15, 0.501, 3.624, 3.444, 3.0, 8.987, 6.849, 9.329, 10.084,
        11.272, 5.791,
    ],
    [
        400.0, 600.0, 1.5, 3.0, 4.017, 3.15, 0.501, 4.929, 3.444, 3.0, 8.987, 4.726, 9.33, 10.084,
        11.272, 5.791,
    ],
    [
        400.0, 600.0, 1.5, 4.0, 4.931, 3.149, 0.501, 6.553, 3.444, 3.0, 8.987, 4.1, 9.327, 10.084,
        11.272, 5.791,
    ],
    [
        400.0, 600.0, 1.5, 5.0, 5.888, 3.151, 0.501, 8.28, 3.445, 3.0, 8.987, 3.805, 9.33, 10.084,
        11.272, 5.791,
    ],
];

pub type AccRow = [(f64, bool); 9];

pub const ACC_H1: [AccRow; 16] = [
    [
        (0.000, false),
        (0.716, true),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.000, false),
        (1.000, true),
        (1.000, true),
        (0.008, false),
        (0.042, false),
        (0.000, false),
        (0.002, false),
        (0.992, true),
        (0.994, true),
    ],
    [
        (0.000, false),
        (1.000, true),
        (0.996, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.000, false),
        (1.000, true),
        (0.998, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.000, false),
        (0.676, true),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.728, true),
        (0.804, true),
    ],
    [
        (0.000, false),
        (1.000, true),
        (1.000, true),
        (0.042, false),
        (0.086, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.000, false),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (0.980, true),
        (0.980, true),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.838, true),
        (0.000, false),
        (0.124, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.836, true),
        (0.000, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.958, true),
        (0.978, true),
    ],
    [
        (0.806, true),
        (0.002, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.808, true),
        (0.954, true),
        (1.000, true),
        (0.006, false),
        (0.026, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.828, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.998, true),
        (0.000, false),
        (0.868, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (1.000, true),
        (0.000, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.442, true),
        (0.588, true),
    ],
    [
        (1.000, true),
        (0.000, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
];

pub const ACC_H2: [AccRow; 16] = [
    [
        (0.134, false),
        (0.650, true),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.094, false),
        (1.000, true),
        (1.000, true),
        (0.002, false),
        (0.020, false),
        (0.000, false),
        (0.000, false),
        (0.984, true),
        (0.994, true),
    ],
    [
        (0.110, false),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.130, false),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.984, true),
        (0.000, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.990, true),
        (0.638, true),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.690, true),
        (0.774, true),
    ],
    [
        (0.986, true),
        (1.000, true),
        (1.000, true),
        (0.028, false),
        (0.056, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.978, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (0.964, true),
        (0.974, true),
        (1.000, true),
        (1.000, true),
    ],
    [
        (1.000, true),
        (0.000, false),
        (0.298, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (1.000, true),
        (0.000, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.906, true),
        (0.952, true),
    ],
    [
        (1.000, true),
        (0.004, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
    [
        (1.000, true),
        (0.944, true),
        (1.000, true),
        (0.004, false),
        (0.006, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.640, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (1.000, true),
        (0.000, false),
        (0.922, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (1.000, true),
        (0.000, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.426, true),
        (0.578, true),
    ],
    [
        (1.000, true),
        (0.002, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.998, true),
        (0.998, true),
    ],
];

pub const ACC_H3: [AccRow; 16] = [
    [
        (0.000, false),
        (0.770, true),
        (0.326, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.000, false),
        (1.000, true),
        (0.384, true),
        (0.000, false),
        (0.084, false),
        (0.000, false),
        (0.024, false),
        (0.988, true),
        (0.972, true),
    ],
    [
        (0.000, false),
        (1.000, true),
        (0.404, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (0.994, true),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.000, false),
        (1.000, true),
        (0.372, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.000, false),
        (0.000, false),
        (0.994, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.000, false),
        (0.716, true),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.758, true),
        (0.822, true),
    ],
    [
        (0.000, false),
        (1.000, true),
        (1.000, true),
        (0.036, false),
        (0.134, false),
        (0.000, false),
        (0.004, false),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.000, false),
        (1.000, true),
        (1.000, true),
        (0.998, true),
        (1.000, true),
        (0.962, true),
        (0.958, true),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.000, false),
        (0.000, false),
        (0.016, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.976, true),
        (0.984, true),
    ],
    [
        (0.000, false),
        (0.014, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.000, false),
        (0.942, true),
        (1.000, true),
        (0.000, false),
        (0.028, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
    [
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.000, false),
        (0.000, false),
        (0.644, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
    ],
    [
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.474, true),
        (0.680, true),
    ],
    [
        (0.000, false),
        (0.002, false),
        (1.000, true),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (0.000, false),
        (1.000, true),
        (1.000, true),
    ],
];

/// Tall-regime accuracy rows for (300, 900), signals 5..35 step 5, in
/// method order AIC, BIC, GIC, PC1, IC1, PC2, IC2, PC3, IC3.
pub const ACC_TALL_300_900: [[f64; 9]; 7] = [
    [
        0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000,
    ],
    [
        1.000, 0.000, 0.892, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000,
    ],
    [
        1.000, 0.000, 1.000, 0.000, 0.000, 0.000, 0.000, 0.038, 0.084,
    ],
    [
        1.000, 0.126, 1.000, 0.034, 0.054, 0.000, 0.002, 0.998, 1.000,
    ],
    [
        1.000, 0.988, 1.000, 0.956, 0.974, 0.764, 0.854, 1.000, 1.000,
    ],
    [
        1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000,
    ],
    [
        1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000,
    ],
];
