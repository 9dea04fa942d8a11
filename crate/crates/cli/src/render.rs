//! Raster and vector renders of triangle rows, pyramid planes and cube
//! slices. Residue `r` is drawn at gray level `r`; cells outside the shape
//! are 0.

use std::fmt::Write as _;

use pascalmod::pascal::rows;
use pascalmod::pyramid::{PyramidCube, PyramidPlane};
use pascalmod::Prime;

use crate::error::{CliError, CliResult};

/// A gray-level image with values in `0..=maxval`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub maxval: u32,
    pub pixels: Vec<u32>,
}

impl Raster {
    fn blank(width: usize, height: usize, maxval: u32) -> Self {
        Raster {
            width,
            height,
            maxval,
            pixels: vec![0; width * height],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.pixels[y * self.width + x]
    }

    fn set(&mut self, x: usize, y: usize, v: u32) {
        self.pixels[y * self.width + x] = v;
    }

    pub fn row(&self, y: usize) -> &[u32] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }

    /// Plain `P2` text, one image row per line.
    pub fn to_pgm(&self) -> String {
        let mut out = format!("P2\n{} {}\n{}\n", self.width, self.height, self.maxval);
        for y in 0..self.height {
            let line: Vec<String> = self.row(y).iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses plain `P2` text back into a raster.
pub fn parse_pgm(text: &str) -> CliResult<Raster> {
    let bad = |m: &str| CliError::Usage(format!("not a plain PGM: {m}"));
    let mut tokens = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .flat_map(str::split_whitespace);
    if tokens.next() != Some("P2") {
        return Err(bad("missing P2 magic"));
    }
    let mut num = || -> CliResult<usize> {
        tokens
            .next()
            .ok_or_else(|| bad("truncated"))?
            .parse()
            .map_err(|_| bad("non-numeric token"))
    };
    let (width, height, maxval) = (num()?, num()?, num()? as u32);
    let mut r = Raster::blank(width, height, maxval);
    for i in 0..width * height {
        let v = num()? as u32;
        if v > maxval {
            return Err(bad("value above maxval"));
        }
        r.pixels[i] = v;
    }
    Ok(r)
}

fn triangle_width(rows: usize) -> usize {
    2 * rows - 1
}

/// Rows `0..rows` of Pascal's triangle mod `p`, row `n` entry `i` at column
/// `rows - 1 - n + 2i`.
pub fn triangle_raster(p: Prime, rows_wanted: usize) -> CliResult<Raster> {
    if rows_wanted == 0 {
        return Err(CliError::Usage("rows must be at least 1".into()));
    }
    let mut r = Raster::blank(triangle_width(rows_wanted), rows_wanted, p.get() - 1);
    for (n, row) in rows(p).take(rows_wanted).enumerate() {
        for (i, &c) in row.coeffs().iter().enumerate() {
            r.set(rows_wanted - 1 - n + 2 * i, n, c);
        }
    }
    Ok(r)
}

/// Line `k` of the plane as image row `k`, centered like the triangle.
pub fn plane_raster(plane: &PyramidPlane) -> Raster {
    let n = plane.n as usize;
    let mut r = Raster::blank(triangle_width(n + 1), n + 1, plane.p.get() - 1);
    for (k, line) in plane.lines.iter().enumerate() {
        for (i, &c) in line.iter().enumerate() {
            r.set(n - k + 2 * i, k, c);
        }
    }
    r
}

/// The slice of the cube at height `z`, `x` across and `y` down.
pub fn cube_slice_raster(cube: &PyramidCube, z: usize) -> Raster {
    let mut r = Raster::blank(cube.side, cube.side, cube.p.get() - 1);
    for (y, row) in cube.slice_z(z).iter().enumerate() {
        for (x, &c) in row.iter().enumerate() {
            r.set(x, y, u32::from(c));
        }
    }
    r
}

const PALETTE: [&str; 8] = [
    "#ffffff", "#1f3b73", "#c0392b", "#27ae60", "#8e44ad", "#d68910", "#17a589", "#7f8c8d",
];

fn color(r: u32) -> String {
    match PALETTE.get(r as usize) {
        Some(c) => (*c).to_string(),
        None => {
            let g = 40 + (r * 37) % 180;
            format!("#{g:02x}{:02x}{:02x}", 255 - g, (g * 3) % 256)
        }
    }
}

/// The triangle as SVG, one square per entry coloured by residue class.
pub fn triangle_svg(p: Prime, rows_wanted: usize) -> CliResult<String> {
    let raster = triangle_raster(p, rows_wanted)?;
    let cell = 8;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        raster.width * cell,
        raster.height * cell,
        raster.width * cell,
        raster.height * cell
    );
    let _ = writeln!(out, "<style>");
    for r in 0..p.get() {
        let _ = writeln!(out, ".r{r} {{ fill: {}; }}", color(r));
    }
    let _ = writeln!(out, "</style>");
    for (n, row) in rows(p).take(rows_wanted).enumerate() {
        for (i, &c) in row.coeffs().iter().enumerate() {
            let x = (rows_wanted - 1 - n + 2 * i) * cell;
            let _ = writeln!(
                out,
                "<rect class=\"r{c}\" x=\"{x}\" y=\"{}\" width=\"{}\" height=\"{cell}\"/>",
                n * cell,
                2 * cell
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
