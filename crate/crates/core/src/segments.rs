//! Max-min segments `[x, y]_⊕` and their decomposition into conventional
//! elementary segments.
//!
//! For comparable endpoints `x <= y` every point of the segment is
//! `z(β) = x ⊕ (β ⊗ y)`. Sorting all coordinates of `x` and `y` splits the
//! parameter range into intervals on which a fixed set of coordinates moves
//! together with `β` while the rest stay put. Incomparable endpoints are
//! handled by routing through the junction `x ⊕ y`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Vector};

/// One conventional line segment inside a max-min segment.
///
/// `beta_interval` is the parameter range `[t_lo, t_hi]` of the underlying
/// comparable segment. `start` and `end` are given in traversal order, so
/// for pieces on a reversed half `start = z(t_hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryPiece {
    pub beta_interval: (Scalar, Scalar),
    pub start: Vector,
    pub end: Vector,
    /// Coordinates equal to `β` along the piece.
    pub active: Vec<usize>,
    /// Coordinates pinned at the lower endpoint value.
    pub low: Vec<usize>,
    /// Coordinates pinned at the upper endpoint value.
    pub high: Vec<usize>,
}

impl ElementaryPiece {
    /// The point of this piece at parameter `beta`, or `None` if `beta` is
    /// outside the piece's interval.
    pub fn point_at(&self, beta: &Scalar) -> Option<Vector> {
        let (lo, hi) = &self.beta_interval;
        if beta < lo || beta > hi {
            return None;
        }
        let mut entries = self.start.as_slice().to_vec();
        for &i in &self.active {
            entries[i] = beta.clone();
        }
        Some(Vector::new(entries).expect("piece dimension is positive"))
    }

    /// Whether `z` lies on this piece.
    pub fn contains(&self, z: &Vector) -> bool {
        if z.len() != self.start.len() {
            return false;
        }
        let Some(&first) = self.active.first() else {
            return *z == self.start;
        };
        self.point_at(&z[first]).is_some_and(|p| p == *z)
    }

    /// `end - start` in ordinary arithmetic.
    pub fn displacement(&self) -> Vec<BigRational> {
        self.end
            .iter()
            .zip(&self.start)
            .map(|(e, s)| e.as_ratio() - s.as_ratio())
            .collect()
    }

    fn reversed(mut self) -> Self {
        std::mem::swap(&mut self.start, &mut self.end);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentDecomposition {
    pub x: Vector,
    pub y: Vector,
    pub comparable: bool,
    /// Pieces in order from `x` to `y`.
    pub pieces: Vec<ElementaryPiece>,
    /// `x ⊕ y`, present only for incomparable endpoints.
    pub junction: Option<Vector>,
}

impl SegmentDecomposition {
    /// `true` when the segment degenerates to a single point.
    pub fn is_point(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Sorted distinct parameter values at which pieces start or end.
    pub fn breakpoints(&self) -> Vec<Scalar> {
        let mut values: Vec<Scalar> = self
            .pieces
            .iter()
            .flat_map(|p| [p.beta_interval.0.clone(), p.beta_interval.1.clone()])
            .collect();
        values.sort();
        values.dedup();
        values
    }

    /// Whether `z` lies on some declared piece (or is the single point).
    pub fn contains(&self, z: &Vector) -> bool {
        if self.pieces.is_empty() {
            return *z == self.x;
        }
        self.pieces.iter().any(|p| p.contains(z))
    }

    /// Upper bound on the number of pieces: `2d - 1` for comparable
    /// endpoints, `2d - 2` otherwise.
    pub fn piece_bound(&self) -> usize {
        let d = self.x.len();
        if self.comparable {
            2 * d - 1
        } else {
            2 * d - 2
        }
    }
}

fn check_dims(x: &Vector, y: &Vector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "segment endpoints have lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

/// `z(β) = x ⊕ (β ⊗ y)` for comparable endpoints `x <= y`, evaluated
/// coordinatewise: `β` where `x_i <= β <= y_i`, `x_i` where `β <= x_i`,
/// `y_i` where `β >= y_i`.
pub fn segment_point(x: &Vector, y: &Vector, beta: &Scalar) -> Result<Vector> {
    check_dims(x, y)?;
    if !x.le(y) {
        return Err(Error::NotComparable);
    }
    let entries = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| {
            if beta <= xi {
                xi.clone()
            } else if beta >= yi {
                yi.clone()
            } else {
                beta.clone()
            }
        })
        .collect();
    Vector::new(entries)
}

/// Decomposition of `[x, y]_⊕` for `x <= y`.
///
/// Degenerate parameter intervals and constant pieces are dropped, and
/// adjacent intervals with the same moving set are merged, so every piece
/// is a maximal nondegenerate one.
pub fn decompose_comparable(x: &Vector, y: &Vector) -> Result<SegmentDecomposition> {
    check_dims(x, y)?;
    if !x.le(y) {
        return Err(Error::NotComparable);
    }
    let d = x.len();
    let mut breakpoints: Vec<&Scalar> = x.iter().chain(y.iter()).collect();
    breakpoints.sort();
    breakpoints.dedup();

    let mut pieces: Vec<ElementaryPiece> = Vec::new();
    for pair in breakpoints.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        // Strictly inside (lo, hi) the moving set is constant: x_i <= lo and hi <= y_i.
        let active: Vec<usize> = (0..d).filter(|&i| x[i] <= *lo && *hi <= y[i]).collect();
        if active.is_empty() {
            continue;
        }
        if let Some(last) = pieces.last_mut() {
            if last.active == active && last.beta_interval.1 == *lo {
                last.beta_interval.1 = hi.clone();
                last.end = segment_point(x, y, hi)?;
                continue;
            }
        }
        pieces.push(ElementaryPiece {
            beta_interval: (lo.clone(), hi.clone()),
            start: segment_point(x, y, lo)?,
            end: segment_point(x, y, hi)?,
            active,
            low: Vec::new(),
            high: Vec::new(),
        });
    }
    for piece in &mut pieces {
        for i in (0..d).filter(|i| !piece.active.contains(i)) {
            if piece.start[i] == x[i] {
                piece.low.push(i);
            } else {
                piece.high.push(i);
            }
        }
    }
    Ok(SegmentDecomposition {
        x: x.clone(),
        y: y.clone(),
        comparable: true,
        pieces,
        junction: None,
    })
}

/// Decomposition of `[x, y]_⊕` for arbitrary endpoints, as one polyline
/// running from `x` to `y`.
///
/// Incomparable endpoints go through `x ⊕ y`: the pieces of
/// `[x, x ⊕ y]_⊕` followed by those of `[y, x ⊕ y]_⊕` traversed backwards.
pub fn decompose(x: &Vector, y: &Vector) -> Result<SegmentDecomposition> {
    check_dims(x, y)?;
    if x.le(y) {
        return decompose_comparable(x, y);
    }
    if y.le(x) {
        let mut dec = decompose_comparable(y, x)?;
        dec.pieces = dec
            .pieces
            .into_iter()
            .rev()
            .map(ElementaryPiece::reversed)
            .collect();
        dec.x = x.clone();
        dec.y = y.clone();
        return Ok(dec);
    }
    let junction = x.oplus(y)?;
    let first = decompose_comparable(x, &junction)?;
    let second = decompose_comparable(y, &junction)?;
    let mut pieces = first.pieces;
    pieces.extend(
        second
            .pieces
            .into_iter()
            .rev()
            .map(ElementaryPiece::reversed),
    );
    Ok(SegmentDecomposition {
        x: x.clone(),
        y: y.clone(),
        comparable: false,
        pieces,
        junction: Some(junction),
    })
}

/// Whether `[y, y + u]_⊕` is the ordinary segment from `y` to `y + u`:
/// on the support of `u` all coordinates of `y` agree and all coordinates
/// of `u` agree.
pub fn is_ordinary(y: &Vector, u: &Vector) -> Result<bool> {
    check_dims(y, u)?;
    for (yi, ui) in y.iter().zip(u) {
        Scalar::new(yi.as_ratio() + ui.as_ratio())?;
    }
    let support: Vec<usize> = (0..u.len())
        .filter(|&i| !u[i].as_ratio().is_zero())
        .collect();
    let Some(&first) = support.first() else {
        return Ok(true);
    };
    Ok(support
        .iter()
        .all(|&i| y[i] == y[first] && u[i] == u[first]))
}

/// `y + u` for a displacement that keeps the point in the unit cube.
pub fn translate(y: &Vector, u: &Vector) -> Result<Vector> {
    check_dims(y, u)?;
    let entries = y
        .iter()
        .zip(u)
        .map(|(a, b)| Scalar::new(a.as_ratio() + b.as_ratio()))
        .collect::<Result<Vec<_>>>()?;
    Vector::new(entries)
}
