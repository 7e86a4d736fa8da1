//! Orthographic scatter plots of graph samples.
//!
//! The camera looks down at 25 degrees of elevation from an azimuth of -35
//! degrees. Height is rescaled to 0.8 of the triangle side. Colour follows a
//! five-stop viridis ramp (dark purple at the lowest value, yellow at the
//! highest), which is monotone in lightness.

use std::path::Path;

use gasket_fif::GraphPoint;
use image::{Rgb, RgbImage};

use crate::error::CliError;

pub const WIDTH: u32 = 1024;
pub const HEIGHT: u32 = 896;
const MARGIN: f64 = 24.0;
const AZIMUTH_DEG: f64 = -35.0;
const ELEVATION_DEG: f64 = 25.0;

const RAMP: [[f64; 3]; 5] = [
    [68.0, 1.0, 84.0],
    [59.0, 82.0, 139.0],
    [33.0, 145.0, 140.0],
    [94.0, 201.0, 98.0],
    [253.0, 231.0, 37.0],
];

/// Colour for `s` in `[0, 1]`.
pub fn ramp(s: f64) -> Rgb<u8> {
    let s = if s.is_finite() { s.clamp(0.0, 1.0) } else { 0.0 };
    let pos = s * (RAMP.len() - 1) as f64;
    let k = (pos.floor() as usize).min(RAMP.len() - 2);
    let t = pos - k as f64;
    let mix = |c: usize| (RAMP[k][c] + t * (RAMP[k + 1][c] - RAMP[k][c])).round() as u8;
    Rgb([mix(0), mix(1), mix(2)])
}

pub fn scatter(points: &[GraphPoint]) -> RgbImage {
    let mut img = RgbImage::from_pixel(WIDTH, HEIGHT, Rgb([255, 255, 255]));
    if points.is_empty() {
        return img;
    }
    let (zmin, zmax) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.z), hi.max(p.z))
        });
    let zspan = zmax - zmin;
    let zscale = if zspan > 0.0 { 0.8 / zspan } else { 0.0 };
    let (sa, ca) = AZIMUTH_DEG.to_radians().sin_cos();
    let (se, ce) = ELEVATION_DEG.to_radians().sin_cos();

    // (screen x, screen y, depth, colour parameter)
    let mut projected: Vec<(f64, f64, f64, f64)> = points
        .iter()
        .map(|p| {
            let (x, y, z) = (p.x - 0.5, p.y - 0.2886751345948129, (p.z - zmin) * zscale);
            let sx = x * ca - y * sa;
            let depth = x * sa + y * ca;
            let sy = z * ce + depth * se;
            let c = if zspan > 0.0 { (p.z - zmin) / zspan } else { 0.5 };
            (sx, sy, depth, c)
        })
        .collect();
    // far points first so near ones stay visible
    projected.sort_by(|a, b| b.2.total_cmp(&a.2));

    let (mut xlo, mut xhi, mut ylo, mut yhi) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(sx, sy, _, _) in &projected {
        xlo = xlo.min(sx);
        xhi = xhi.max(sx);
        ylo = ylo.min(sy);
        yhi = yhi.max(sy);
    }
    let usable_w = WIDTH as f64 - 2.0 * MARGIN;
    let usable_h = HEIGHT as f64 - 2.0 * MARGIN;
    let scale = (usable_w / (xhi - xlo).max(1e-12)).min(usable_h / (yhi - ylo).max(1e-12));
    let x0 = MARGIN + 0.5 * (usable_w - scale * (xhi - xlo));
    let y0 = MARGIN + 0.5 * (usable_h - scale * (yhi - ylo));

    for (sx, sy, _, c) in projected {
        let px = (x0 + scale * (sx - xlo)).round();
        let py = (HEIGHT as f64 - y0 - scale * (sy - ylo)).round();
        if px >= 0.0 && py >= 0.0 && px < WIDTH as f64 && py < HEIGHT as f64 {
            img.put_pixel(px as u32, py as u32, ramp(c));
        }
    }
    img
}

pub fn write_png(path: &Path, points: &[GraphPoint]) -> Result<(), CliError> {
    scatter(points)
        .save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| CliError::Render {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
}
