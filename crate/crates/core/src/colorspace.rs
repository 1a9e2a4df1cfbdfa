//! Color spaces and displayable gamuts.
//!
//! sRGB points are kept in channel units `[0, 255]`. Lab points use the
//! native CIE units (`L` in `[0, 100]`, `a*`/`b*` signed) under a D65
//! reference white. Conversion follows the IEC 61966-2-1 transfer curve and
//! the sRGB primaries matrix; the reference white is taken as the image of
//! sRGB white under that matrix so that white maps to exactly `(100, 0, 0)`.
//!
//! A [`Gamut`] is a bounded convex polytope stored as halfspaces
//! `normal · x <= offset` with unit normals, so offsets are signed distances.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec3::{self, Vec3};

/// Absolute tolerance used by [`Gamut::contains`], in native units.
pub const CONTAINS_TOLERANCE: f64 = 1e-9;

/// Tolerance accepted by [`lab_to_srgb`] for points slightly outside the Lab
/// hull or the sRGB cube (linear channel units).
pub const LAB_DOMAIN_TOLERANCE: f64 = 1e-6;

/// Dimension of every supported color space.
pub const DIMENSION: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorSpace {
    Srgb,
    Lab,
}

impl fmt::Display for ColorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorSpace::Srgb => f.write_str("srgb"),
            ColorSpace::Lab => f.write_str("lab"),
        }
    }
}

impl std::str::FromStr for ColorSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "srgb" => Ok(ColorSpace::Srgb),
            "lab" => Ok(ColorSpace::Lab),
            other => Err(Error::Parse(format!("unknown color space `{other}`"))),
        }
    }
}

/// A point in a three-dimensional color space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColorPoint {
    space: ColorSpace,
    coords: Vec3,
}

impl ColorPoint {
    /// Fails if any coordinate is NaN or infinite.
    pub fn new(space: ColorSpace, coords: [f64; 3]) -> Result<Self> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Self { space, coords })
        } else {
            Err(Error::Domain(format!("non-finite coordinates {coords:?}")))
        }
    }

    /// Shorthand for an sRGB point. Panics on non-finite input.
    pub fn srgb(r: f64, g: f64, b: f64) -> Self {
        Self::new(ColorSpace::Srgb, [r, g, b]).expect("finite sRGB coordinates")
    }

    /// Shorthand for a Lab point. Panics on non-finite input.
    pub fn lab(l: f64, a: f64, b: f64) -> Self {
        Self::new(ColorSpace::Lab, [l, a, b]).expect("finite Lab coordinates")
    }

    pub fn space(&self) -> ColorSpace {
        self.space
    }

    pub fn coords(&self) -> [f64; 3] {
        self.coords
    }

    /// `#RRGGBB` rendering of an sRGB point. Channels are rounded half-up and
    /// clamped to `[0, 255]`.
    pub fn to_hex(&self) -> Result<String> {
        Error::check_space(ColorSpace::Srgb, self.space)?;
        let [r, g, b] = self
            .coords
            .map(|c| (c + 0.5).floor().clamp(0.0, 255.0) as u8);
        Ok(format!("#{r:02X}{g:02X}{b:02X}"))
    }
}

/// Euclidean distance between two points of the same space.
pub fn distance(p: &ColorPoint, q: &ColorPoint) -> Result<f64> {
    Error::check_space(p.space, q.space)?;
    Ok(vec3::dist(p.coords, q.coords))
}

// sRGB primaries to XYZ (D65).
const SRGB_TO_XYZ: [Vec3; 3] = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
];

const LAB_DELTA: f64 = 6.0 / 29.0;

struct Conversion {
    xyz_to_srgb: [Vec3; 3],
    white: Vec3,
}

fn conversion() -> &'static Conversion {
    static CONVERSION: OnceLock<Conversion> = OnceLock::new();
    CONVERSION.get_or_init(|| {
        let m = SRGB_TO_XYZ;
        let white = [m[0].iter().sum(), m[1].iter().sum(), m[2].iter().sum()];
        Conversion {
            xyz_to_srgb: invert3(&m),
            white,
        }
    })
}

fn invert3(m: &[Vec3; 3]) -> [Vec3; 3] {
    let cols = [
        vec3::cross(m[1], m[2]),
        vec3::cross(m[2], m[0]),
        vec3::cross(m[0], m[1]),
    ];
    let det = vec3::dot(m[0], cols[0]);
    // inverse = adjugate / det; the adjugate columns are the cross products.
    let mut inv = [[0.0; 3]; 3];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..3 {
            inv[i][j] = col[i] / det;
        }
    }
    inv
}

fn mat_vec(m: &[Vec3; 3], v: Vec3) -> Vec3 {
    [vec3::dot(m[0], v), vec3::dot(m[1], v), vec3::dot(m[2], v)]
}

fn srgb_decode(c: f64) -> f64 {
    if c <= 0.04045 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

fn srgb_encode(c: f64) -> f64 {
    if c <= 0.0031308 {
        12.92 * c
    } else {
        1.055 * c.powf(1.0 / 2.4) - 0.055
    }
}

fn lab_f(t: f64) -> f64 {
    if t > LAB_DELTA.powi(3) {
        t.cbrt()
    } else {
        t / (3.0 * LAB_DELTA * LAB_DELTA) + 4.0 / 29.0
    }
}

fn lab_f_inv(t: f64) -> f64 {
    if t > LAB_DELTA {
        t.powi(3)
    } else {
        3.0 * LAB_DELTA * LAB_DELTA * (t - 4.0 / 29.0)
    }
}

/// Converts an sRGB point (channels in `[0, 255]`) to CIE Lab.
pub fn srgb_to_lab(c: &ColorPoint) -> Result<ColorPoint> {
    Error::check_space(ColorSpace::Srgb, c.space)?;
    if c.coords.iter().any(|&v| !(0.0..=255.0).contains(&v)) {
        return Err(Error::Domain(format!(
            "sRGB channels must lie in [0, 255], got {:?}",
            c.coords
        )));
    }
    let conv = conversion();
    let linear = c.coords.map(|v| srgb_decode(v / 255.0));
    let xyz = mat_vec(&SRGB_TO_XYZ, linear);
    let [fx, fy, fz] = [0, 1, 2].map(|k| lab_f(xyz[k] / conv.white[k]));
    ColorPoint::new(
        ColorSpace::Lab,
        [116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)],
    )
}

/// Converts a displayable Lab point back to sRGB.
///
/// A point is rejected when it lies more than [`LAB_DOMAIN_TOLERANCE`]
/// outside the Lab hull and also maps outside the sRGB cube; project such
/// points first. Hull points need not be true sRGB colors, so channels are
/// clamped to `[0, 255]`.
pub fn lab_to_srgb(c: &ColorPoint) -> Result<ColorPoint> {
    Error::check_space(ColorSpace::Lab, c.space)?;
    let conv = conversion();
    let [l, a, b] = c.coords;
    let fy = (l + 16.0) / 116.0;
    let f = [fy + a / 500.0, fy, fy - b / 200.0];
    let xyz = [0, 1, 2].map(|k| conv.white[k] * lab_f_inv(f[k]));
    let linear = mat_vec(&conv.xyz_to_srgb, xyz);
    // The image of the sRGB cube is not convex, so a color can be a true
    // sRGB color and still sit slightly outside the hull of the corners.
    // Reject only colors outside both.
    let outside_cube = linear
        .iter()
        .any(|&v| !(-LAB_DOMAIN_TOLERANCE..=1.0 + LAB_DOMAIN_TOLERANCE).contains(&v));
    if outside_cube && lab_gamut().max_violation(c.coords) > LAB_DOMAIN_TOLERANCE {
        return Err(Error::Domain(format!(
            "Lab color {:?} lies outside the displayable gamut",
            c.coords
        )));
    }
    let rgb = linear.map(|v| (255.0 * srgb_encode(v.clamp(0.0, 1.0))).clamp(0.0, 255.0));
    ColorPoint::new(ColorSpace::Srgb, rgb)
}

/// A halfspace `normal · x <= offset` with a unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: [f64; 3],
    pub offset: f64,
}

impl Halfspace {
    /// Signed distance of `x` past the boundary (positive outside).
    pub fn excess(&self, x: [f64; 3]) -> f64 {
        vec3::dot(self.normal, x) - self.offset
    }
}

/// A bounded, full-dimensional convex polytope of displayable colors.
#[derive(Clone, Debug)]
pub struct Gamut {
    space: ColorSpace,
    extreme_points: Vec<ColorPoint>,
    halfspaces: Vec<Halfspace>,
    center: ColorPoint,
    diameter: f64,
}

impl Gamut {
    /// Builds the convex hull of `points` by facet enumeration over all
    /// triples. Intended for small point sets (tens of points).
    pub fn from_points(points: &[ColorPoint], center: ColorPoint) -> Result<Self> {
        let space = center.space;
        for p in points {
            Error::check_space(space, p.space)?;
        }
        if points.len() < 4 {
            return Err(Error::DegenerateGamut(format!(
                "need at least 4 points, got {}",
                points.len()
            )));
        }
        let xs: Vec<Vec3> = points.iter().map(|p| p.coords).collect();
        let mut diameter: f64 = 0.0;
        for (i, &a) in xs.iter().enumerate() {
            for &b in &xs[i + 1..] {
                diameter = diameter.max(vec3::dist(a, b));
            }
        }
        if diameter == 0.0 {
            return Err(Error::DegenerateGamut("all points coincide".into()));
        }
        let tol = 1e-9 * diameter;
        let mut halfspaces: Vec<Halfspace> = Vec::new();
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                for k in j + 1..xs.len() {
                    let raw = vec3::cross(vec3::sub(xs[j], xs[i]), vec3::sub(xs[k], xs[i]));
                    let len = vec3::norm(raw);
                    if len <= tol * diameter {
                        continue;
                    }
                    let normal = vec3::scale(raw, 1.0 / len);
                    let offset = vec3::dot(normal, xs[i]);
                    let signed: Vec<f64> =
                        xs.iter().map(|&x| vec3::dot(normal, x) - offset).collect();
                    let candidate = if signed.iter().all(|&s| s <= tol) {
                        Halfspace { normal, offset }
                    } else if signed.iter().all(|&s| s >= -tol) {
                        Halfspace {
                            normal: vec3::scale(normal, -1.0),
                            offset: -offset,
                        }
                    } else {
                        continue;
                    };
                    let duplicate = halfspaces.iter().any(|h| {
                        vec3::dot(h.normal, candidate.normal) > 1.0 - 1e-12
                            && (h.offset - candidate.offset).abs() <= tol
                    });
                    if !duplicate {
                        halfspaces.push(candidate);
                    }
                }
            }
        }
        if halfspaces.len() < 4 {
            return Err(Error::DegenerateGamut(
                "points are coplanar; the hull is not full-dimensional".into(),
            ));
        }
        if let Some(h) = halfspaces.iter().find(|h| h.excess(center.coords) >= -tol) {
            return Err(Error::DegenerateGamut(format!(
                "center {:?} is not strictly inside facet {:?}",
                center.coords, h
            )));
        }
        Ok(Self {
            space,
            extreme_points: points.to_vec(),
            halfspaces,
            center,
            diameter,
        })
    }

    pub fn space(&self) -> ColorSpace {
        self.space
    }

    pub fn extreme_points(&self) -> &[ColorPoint] {
        &self.extreme_points
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// Fixed interior point used as the origin of rescaling.
    pub fn center(&self) -> ColorPoint {
        self.center
    }

    /// Maximum distance between two points of the gamut.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Axis-aligned bounding box `(min, max)` of the extreme points.
    pub fn bounding_box(&self) -> ([f64; 3], [f64; 3]) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &self.extreme_points {
            for k in 0..3 {
                lo[k] = lo[k].min(p.coords[k]);
                hi[k] = hi[k].max(p.coords[k]);
            }
        }
        (lo, hi)
    }

    pub(crate) fn max_violation(&self, x: Vec3) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| h.excess(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn contains_coords(&self, x: Vec3) -> bool {
        self.halfspaces
            .iter()
            .all(|h| h.excess(x) <= CONTAINS_TOLERANCE)
    }

    pub(crate) fn project_coords(&self, x: Vec3) -> Vec3 {
        if self.contains_coords(x) {
            return x;
        }
        let c = self.center.coords;
        let dir = vec3::sub(x, c);
        let t = self
            .halfspaces
            .iter()
            .filter_map(|h| {
                let rate = vec3::dot(h.normal, dir);
                (rate > 0.0).then(|| (h.offset - vec3::dot(h.normal, c)) / rate)
            })
            .fold(1.0_f64, f64::min);
        vec3::add(c, vec3::scale(dir, t))
    }

    /// Whether `p` satisfies every halfspace within [`CONTAINS_TOLERANCE`].
    pub fn contains(&self, p: &ColorPoint) -> Result<bool> {
        Error::check_space(self.space, p.space)?;
        Ok(self.contains_coords(p.coords))
    }

    /// Rescales an out-of-gamut point toward the center until it reaches the
    /// boundary. Points already inside are returned unchanged.
    pub fn project(&self, p: &ColorPoint) -> Result<ColorPoint> {
        Error::check_space(self.space, p.space)?;
        Ok(ColorPoint {
            space: self.space,
            coords: self.project_coords(p.coords),
        })
    }
}

/// Free-function form of [`Gamut::contains`].
pub fn contains(g: &Gamut, p: &ColorPoint) -> Result<bool> {
    g.contains(p)
}

/// Free-function form of [`Gamut::project`].
pub fn project_to_gamut(g: &Gamut, p: &ColorPoint) -> Result<ColorPoint> {
    g.project(p)
}

/// The eight corners of the sRGB cube, black first, in `(r, g, b)` binary
/// order.
pub fn srgb_corners() -> [ColorPoint; 8] {
    [0, 1, 2, 3, 4, 5, 6, 7].map(|bits: u8| {
        let ch = |bit: u8| if bits & bit != 0 { 255.0 } else { 0.0 };
        ColorPoint::srgb(ch(4), ch(2), ch(1))
    })
}

/// The cube `[0, 255]^3` centered at mid gray.
pub fn make_srgb_gamut() -> Gamut {
    Gamut::from_points(&srgb_corners(), ColorPoint::srgb(127.5, 127.5, 127.5))
        .expect("the sRGB cube is a valid gamut")
}

/// Convex hull in Lab of the eight sRGB cube corners, centered at neutral
/// gray `(50, 0, 0)`.
pub fn make_lab_gamut() -> Gamut {
    lab_gamut().clone()
}

/// Shared instance of [`make_lab_gamut`].
pub fn lab_gamut() -> &'static Gamut {
    static LAB: OnceLock<Gamut> = OnceLock::new();
    LAB.get_or_init(|| {
        let corners = srgb_corners().map(|c| srgb_to_lab(&c).expect("cube corners are in range"));
        Gamut::from_points(&corners, ColorPoint::lab(50.0, 0.0, 0.0))
            .expect("the Lab hull of the sRGB corners is a valid gamut")
    })
}

/// Gamut for `space`.
pub fn gamut_for(space: ColorSpace) -> Gamut {
    match space {
        ColorSpace::Srgb => make_srgb_gamut(),
        ColorSpace::Lab => make_lab_gamut(),
    }
}
