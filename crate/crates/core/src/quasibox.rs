//! Quasiboxes: open products of intervals, each shared by a block of
//! coordinates, with every other coordinate fixed.
//!
//! A `k`-dimensional quasibox is the canonical `k`-dimensional open
//! polytrope. This module builds an explicit one inside the hull of a
//! matrix from a rank certificate, and independently searches a rational
//! grid for the largest quasibox whose sample points all lie in the hull.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hull::{first_mismatch, homogenize, principal};
use crate::regularity::{normalize_certificate_with, verify_certificate, Certificate, RankWitness};
use crate::scalar::{Matrix, Scalar, Vector};
use crate::segments::decompose;

/// `B_y^ε(J_1, …, J_k)`: points `z` with `z_ℓ = s_i` for all `ℓ ∈ J_i`,
/// `t_i - ε < s_i < t_i + ε`, and `z_ℓ = y_ℓ` outside `J = ∪ J_i`. The
/// levels `t_i` are read off the center `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasibox {
    center: Vector,
    blocks: Vec<Vec<usize>>,
    epsilon: Scalar,
}

impl Quasibox {
    pub fn new(center: Vector, blocks: Vec<Vec<usize>>, epsilon: Scalar) -> Result<Self> {
        let d = center.len();
        if epsilon.is_zero() {
            return Err(Error::InvalidArgument(
                "quasibox half-width must be positive".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for block in &blocks {
            let Some(&first) = block.first() else {
                return Err(Error::InvalidArgument(
                    "quasibox blocks must be nonempty".into(),
                ));
            };
            for &l in block {
                if l >= d {
                    return Err(Error::DimensionMismatch(format!(
                        "block index {l} out of range for dimension {d}"
                    )));
                }
                if !seen.insert(l) {
                    return Err(Error::InvalidArgument(format!(
                        "coordinate {l} appears in two blocks"
                    )));
                }
                if center[l] != center[first] {
                    return Err(Error::InvalidArgument(
                        "center must be constant on each block".into(),
                    ));
                }
            }
            let t = center[first].as_ratio();
            let e = epsilon.as_ratio();
            if t - e < BigRational::zero() || t + e > BigRational::one() {
                return Err(Error::OutOfRange(format!(
                    "level {} ± {} leaves the unit interval",
                    center[first], epsilon
                )));
            }
        }
        Ok(Quasibox {
            center,
            blocks,
            epsilon,
        })
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn epsilon(&self) -> &Scalar {
        &self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.blocks.len()
    }

    pub fn levels(&self) -> Vec<Scalar> {
        self.blocks
            .iter()
            .map(|b| self.center[b[0]].clone())
            .collect()
    }

    fn block_point(&self, values: &[BigRational]) -> Vector {
        let mut entries = self.center.as_slice().to_vec();
        for (block, value) in self.blocks.iter().zip(values) {
            let s = Scalar::new(value.clone()).expect("sample stays inside the box");
            for &l in block {
                entries[l] = s.clone();
            }
        }
        Vector::new(entries).expect("positive dimension")
    }

    /// The center and the `2^k` points with every block at `t_i ± ε/2`.
    pub fn samples(&self) -> Vec<Vector> {
        let half = self.epsilon.as_ratio() / BigRational::from_integer(2.into());
        let levels: Vec<BigRational> = self.levels().into_iter().map(Scalar::into_ratio).collect();
        let mut out = vec![self.center.clone()];
        for mask in 0u64..(1u64 << self.dim()) {
            let values: Vec<BigRational> = levels
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    if mask >> i & 1 == 1 {
                        t + &half
                    } else {
                        t - &half
                    }
                })
                .collect();
            out.push(self.block_point(&values));
        }
        out
    }

    /// A random point of the open box, reproducible from `rng`.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> Vector {
        const STEPS: i64 = 1024;
        let e = self.epsilon.as_ratio();
        let values: Vec<BigRational> = self
            .levels()
            .into_iter()
            .map(|t| {
                let u = rng.random_range(1..2 * STEPS);
                t.as_ratio() - e + e * BigRational::new(u.into(), STEPS.into())
            })
            .collect();
        self.block_point(&values)
    }
}

pub fn quasibox_contains(b: &Quasibox, z: &Vector) -> Result<bool> {
    if z.len() != b.center.len() {
        return Err(Error::DimensionMismatch(format!(
            "quasibox lives in dimension {}, point has {} coordinates",
            b.center.len(),
            z.len()
        )));
    }
    let in_blocks: BTreeSet<usize> = b.blocks.iter().flatten().copied().collect();
    let fixed_ok = (0..z.len())
        .filter(|l| !in_blocks.contains(l))
        .all(|l| z[l] == b.center[l]);
    if !fixed_ok {
        return Ok(false);
    }
    let e = b.epsilon.as_ratio();
    Ok(b.blocks.iter().all(|block| {
        let s = &z[block[0]];
        let t = b.center[block[0]].as_ratio();
        block.iter().all(|&l| z[l] == *s) && s.as_ratio() > &(t - e) && s.as_ratio() < &(t + e)
    }))
}

/// Intermediate quantities of the certificate construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiboxDerivation {
    /// Row maximum `α_ℓ` of `A'[λ]` for every row outside the blocks.
    pub alpha: BTreeMap<usize, Scalar>,
    /// Certified columns (indices of `A`), in increasing order.
    pub columns: Vec<usize>,
    /// Coefficients actually used, keyed like `columns`.
    pub lambdas: BTreeMap<usize, Scalar>,
    /// `m_i` per certified column, same order as `columns`.
    pub m: Vec<Scalar>,
    /// `κ = min_i (λ_i - m_i)`.
    pub kappa: Scalar,
    /// `y(κ/2, …, κ/2)`.
    pub center: Vector,
    /// Whether the coefficients had to be lowered first.
    pub normalized: bool,
}

struct Construction {
    blocks: Vec<Vec<usize>>,
    alpha: BTreeMap<usize, Scalar>,
    m: Vec<Scalar>,
    stable: bool,
}

/// `A'` is `a` restricted to the witness columns (all rows); coefficient
/// indices refer to columns of `A'`.
fn construct(a_prime: &Matrix, cert: &Certificate, columns: &[usize]) -> Construction {
    let coef = |c: usize| {
        cert.coefficient(c)
            .expect("certificate covers every column")
    };
    let (d, n) = a_prime.shape();
    let scaled = |l: usize, c: usize| a_prime.get(l, c).otimes(&coef(c));

    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); columns.len()];
    let mut alpha = BTreeMap::new();
    for l in 0..d {
        let values: Vec<Scalar> = (0..n).map(|c| scaled(l, c)).collect();
        let top = values.iter().max().expect("at least one column").clone();
        let attaining: Vec<usize> = (0..n).filter(|&c| values[c] == top).collect();
        match attaining.as_slice() {
            [c] if Some(*c) != cert.omitted_column && top == coef(*c) => {
                let slot = columns
                    .iter()
                    .position(|x| x == c)
                    .expect("certified column");
                blocks[slot].push(l);
            }
            _ => {
                alpha.insert(l, top);
            }
        }
    }

    let m = columns
        .iter()
        .zip(&blocks)
        .map(|(&i, block)| {
            let lambda = coef(i);
            let from_alpha = alpha.values().filter(|&v| *v < lambda).max().cloned();
            let from_block = block
                .iter()
                .flat_map(|&l| (0..n).filter(move |&s| s != i).map(move |s| (l, s)))
                .map(|(l, s)| scaled(l, s))
                .max();
            from_alpha
                .into_iter()
                .chain(from_block)
                .max()
                .unwrap_or_else(Scalar::zero)
        })
        .collect();

    // Lowering the coefficients must leave every α_ℓ in place: some term
    // attaining it has to be unscaled or capped by its entry.
    let stable = alpha.iter().all(|(&l, value)| {
        (0..n).any(|c| {
            scaled(l, c) == *value
                && (Some(c) == cert.omitted_column
                    || (a_prime.get(l, c) == value && *value < coef(c)))
        })
    });

    Construction {
        blocks,
        alpha,
        m,
        stable,
    }
}

/// The quasibox `B_ȳ^{κ/2}(J_1, …, J_k)` contained in the hull of `a`,
/// built from the certificate of a rank witness.
///
/// `J_i` collects the rows where certified column `i` alone attains the
/// row maximum `λ_i` of `A'[λ]`; other rows keep their maximum `α_ℓ`.
/// Coefficients are first lowered (see
/// [`crate::regularity::normalize_certificate`]) only if some `α_ℓ` would
/// otherwise move with them.
pub fn quasibox_from_certificate(
    a: &Matrix,
    witness: &RankWitness,
) -> Result<(Quasibox, QuasiboxDerivation)> {
    if witness.rank == 0 {
        return Err(Error::InvalidArgument(
            "a rank-0 witness carries no certificate".into(),
        ));
    }
    let sub = witness.submatrix(a)?;
    if !verify_certificate(&sub, &witness.certificate)? {
        return Err(Error::InvalidCertificate(
            "certificate does not verify".into(),
        ));
    }
    let a_prime = a.select_columns(&witness.cols)?;
    let local_columns: Vec<usize> = witness.certificate.lambdas.keys().copied().collect();

    let mut cert = witness.certificate.clone();
    let mut built = construct(&a_prime, &cert, &local_columns);
    let normalized = !built.stable;
    if normalized {
        // Keep the coefficients away from entries outside the witness rows too.
        cert = normalize_certificate_with(&sub, &a_prime.distinct_entries(), &cert)?;
        built = construct(&a_prime, &cert, &local_columns);
        debug_assert!(built.stable);
    }

    let lambdas: Vec<Scalar> = local_columns
        .iter()
        .map(|&c| cert.lambdas[&c].clone())
        .collect();
    let kappa = lambdas
        .iter()
        .zip(&built.m)
        .map(|(l, m)| l.as_ratio() - m.as_ratio())
        .min()
        .expect("rank >= 1");
    let half = &kappa / BigRational::from_integer(2.into());
    let mut center: Vec<Scalar> = vec![Scalar::zero(); a.nrows()];
    for (l, value) in &built.alpha {
        center[*l] = value.clone();
    }
    for (block, lambda) in built.blocks.iter().zip(&lambdas) {
        let level = Scalar::new(lambda.as_ratio() - &half)?;
        for &l in block {
            center[l] = level.clone();
        }
    }
    let center = Vector::new(center)?;
    let epsilon = Scalar::new(half)?;
    let quasibox = Quasibox::new(center.clone(), built.blocks, epsilon)?;
    let derivation = QuasiboxDerivation {
        alpha: built.alpha,
        columns: local_columns.iter().map(|&c| witness.cols[c]).collect(),
        lambdas: local_columns
            .iter()
            .map(|&c| (witness.cols[c], cert.lambdas[&c].clone()))
            .collect(),
        m: built.m,
        kappa: Scalar::new(kappa)?,
        center,
        normalized,
    };
    Ok((quasibox, derivation))
}

/// Checks max-min convexity of a quasibox by sampling: for
/// random pairs of points in `b`, every piece endpoint and a random point
/// of each piece of the segment between them must stay in `b`.
pub fn quasibox_is_polytrope_check(b: &Quasibox, samples: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ samples as u64);
    const STEPS: i64 = 1024;
    for _ in 0..samples {
        let z = b.random_point(&mut rng);
        let zeta = b.random_point(&mut rng);
        let Ok(dec) = decompose(&z, &zeta) else {
            return false;
        };
        for piece in &dec.pieces {
            let (lo, hi) = &piece.beta_interval;
            let u = rng.random_range(0..=STEPS);
            let beta = lo.as_ratio()
                + (hi.as_ratio() - lo.as_ratio()) * BigRational::new(u.into(), STEPS.into());
            let Ok(beta) = Scalar::new(beta) else {
                return false;
            };
            let inner = piece.point_at(&beta).expect("beta inside the interval");
            for point in [&piece.start, &piece.end, &inner] {
                if !quasibox_contains(b, point).unwrap_or(false) {
                    return false;
                }
            }
        }
        if dec.is_point() && !quasibox_contains(b, &z).unwrap_or(false) {
            return false;
        }
    }
    true
}

/// Lifts a quasibox of a set `C` to one of its homogenization `V_C` in
/// dimension `d + 1`: the new last coordinate and every fixed coordinate
/// equal to 1 form an extra block just below 1.
pub fn homogenize_quasibox(b: &Quasibox) -> Result<Quasibox> {
    let d = b.center.len();
    let in_blocks: BTreeSet<usize> = b.blocks.iter().flatten().copied().collect();
    let four = BigRational::from_integer(4.into());
    let mut eps = b.epsilon.as_ratio().clone();
    for t in b.levels() {
        eps = eps.min((BigRational::one() - t.as_ratio()) / &four);
    }
    let mut top_block = Vec::new();
    for l in (0..d).filter(|l| !in_blocks.contains(l)) {
        if b.center[l].is_one() {
            top_block.push(l);
        } else {
            eps = eps.min((BigRational::one() - b.center[l].as_ratio()) / &four);
        }
    }
    top_block.push(d);
    let top = Scalar::new(BigRational::one() - &eps)?;
    let mut center = b.center.pushed(top.clone()).into_vec();
    for &l in &top_block {
        center[l] = top.clone();
    }
    let mut blocks = b.blocks.clone();
    blocks.push(top_block);
    Quasibox::new(Vector::new(center)?, blocks, Scalar::new(eps)?)
}

/// Candidate search space for [`largest_grid_quasibox`], with every value
/// replaced by its position in one sorted list. Membership only compares
/// values, so the compressed problem has the same answers.
struct GridSearch {
    d: usize,
    ncols: usize,
    hat: Vec<u32>,
    one: u32,
    /// `(t - ε/2, t, t + ε/2)` per level candidate.
    levels: Vec<[u32; 3]>,
    fixed: Vec<u32>,
    values: Vec<Scalar>,
}

impl GridSearch {
    fn new(a: &Matrix, denominator: usize) -> Self {
        let (d, n) = a.shape();
        let n_den = BigRational::from_integer(denominator.into());
        let eps = BigRational::one() / &n_den;
        let half = &eps / BigRational::from_integer(2.into());

        let mut critical = a.distinct_entries();
        critical.push(Scalar::zero());
        critical.push(Scalar::one());
        critical.sort();
        critical.dedup();

        // Up to d grid levels per gap between consecutive critical values, so
        // any ordering of levels sharing a gap can be realized.
        let mut level_values: Vec<BigRational> = Vec::new();
        for gap in critical.windows(2) {
            let lo = (gap[0].as_ratio() * &n_den).floor().to_integer() + 1;
            let hi = (gap[1].as_ratio() * &n_den).ceil().to_integer() - 1;
            let candidates: Vec<BigRational> = num_iter(lo, hi)
                .map(|p| BigRational::new(p, denominator.into()))
                .filter(|t| t - &eps >= *gap[0].as_ratio() && t + &eps <= *gap[1].as_ratio())
                .collect();
            level_values.extend(spread(&candidates, d));
        }

        let mut all: Vec<Scalar> = critical.clone();
        for t in &level_values {
            for v in [t - &half, t.clone(), t + &half] {
                all.push(Scalar::new(v).expect("levels stay inside their gap"));
            }
        }
        all.push(Scalar::one());
        all.sort();
        all.dedup();
        let rank = |s: &Scalar| all.binary_search(s).expect("value registered") as u32;

        let hat_matrix = homogenize(a);
        let hat: Vec<u32> = hat_matrix.entries().map(rank).collect();
        let levels = level_values
            .iter()
            .map(|t| {
                [t - &half, t.clone(), t + &half]
                    .map(|v| rank(&Scalar::new(v).expect("inside the gap")))
            })
            .collect::<Vec<_>>();
        let mut fixed: Vec<u32> = critical.iter().map(rank).collect();
        fixed.extend(levels.iter().map(|l| l[1]));
        fixed.sort_unstable();
        fixed.dedup();
        GridSearch {
            d,
            ncols: n,
            hat,
            one: rank(&Scalar::one()),
            levels,
            fixed,
            values: all,
        }
    }

    fn member(&self, point: &mut Vec<u32>) -> bool {
        point.push(self.one);
        let x = principal(&self.hat, self.ncols, point, &self.one);
        let ok = first_mismatch(&self.hat, self.ncols, &x, point).is_none();
        point.pop();
        ok
    }

    /// First quasibox with exactly `k` blocks whose samples all pass.
    fn find(&self, k: usize) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        let mut found = None;
        for_each_labelling(self.d, k, &mut |labels| {
            if found.is_some() {
                return;
            }
            let fixed_coords: Vec<usize> = (0..self.d).filter(|&l| labels[l] == 0).collect();
            let slots: Vec<usize> = (0..k)
                .map(|_| self.levels.len())
                .chain(fixed_coords.iter().map(|_| self.fixed.len()))
                .collect();
            if slots.contains(&0) {
                return;
            }
            let mut choice = vec![0usize; slots.len()];
            let mut point = Vec::with_capacity(self.d + 1);
            loop {
                if self.accepts(labels, k, &fixed_coords, &choice, &mut point) {
                    found = Some((labels.to_vec(), choice[..k].to_vec(), choice[k..].to_vec()));
                    return;
                }
                // Odometer over the candidate lists.
                let mut pos = 0;
                loop {
                    if pos == choice.len() {
                        return;
                    }
                    choice[pos] += 1;
                    if choice[pos] < slots[pos] {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
            }
        });
        found
    }

    fn accepts(
        &self,
        labels: &[usize],
        k: usize,
        fixed_coords: &[usize],
        choice: &[usize],
        point: &mut Vec<u32>,
    ) -> bool {
        let build = |point: &mut Vec<u32>, mask: Option<u64>| {
            point.clear();
            point.resize(self.d, 0);
            for (slot, &l) in fixed_coords.iter().enumerate() {
                point[l] = self.fixed[choice[k + slot]];
            }
            for l in 0..self.d {
                if labels[l] > 0 {
                    let block = labels[l] - 1;
                    let level = &self.levels[choice[block]];
                    point[l] = match mask {
                        None => level[1],
                        Some(m) if m >> block & 1 == 1 => level[2],
                        Some(_) => level[0],
                    };
                }
            }
        };
        build(point, None);
        if !self.member(point) {
            return false;
        }
        (0..1u64 << k).all(|mask| {
            build(point, Some(mask));
            self.member(point)
        })
    }
}

fn num_iter(
    lo: num_bigint::BigInt,
    hi: num_bigint::BigInt,
) -> impl Iterator<Item = num_bigint::BigInt> {
    let mut next = lo;
    std::iter::from_fn(move || {
        if next > hi {
            return None;
        }
        let out = next.clone();
        next += 1;
        Some(out)
    })
}

/// At most `count` evenly spread elements, keeping both ends.
fn spread<T: Clone>(items: &[T], count: usize) -> Vec<T> {
    if items.len() <= count {
        return items.to_vec();
    }
    if count == 1 {
        return vec![items[items.len() / 2].clone()];
    }
    (0..count)
        .map(|i| items[i * (items.len() - 1) / (count - 1)].clone())
        .collect()
}

/// Calls `f` with every labelling of `0..d` by `0..=k` in which each block
/// label `1..=k` is used and first appears in increasing order; label 0
/// marks a fixed coordinate.
fn for_each_labelling(d: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn recurse(
        labels: &mut Vec<usize>,
        d: usize,
        k: usize,
        used: usize,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if labels.len() == d {
            if used == k {
                f(labels);
            }
            return;
        }
        if k - used > d - labels.len() {
            return;
        }
        for label in 0..=(used + 1).min(k) {
            labels.push(label);
            recurse(labels, d, k, used.max(label), f);
            labels.pop();
        }
    }
    recurse(&mut Vec::with_capacity(d), d, k, 0, f);
}

/// Largest `k` for which a `k`-dimensional quasibox with levels on the
/// grid `1/denominator`, half-width `1/denominator` and fixed coordinates
/// drawn from the entries, 0, 1 and the level grid has all its samples
/// (see [`Quasibox::samples`]) in the hull of `a`, with that box.
///
/// The search is exhaustive over its candidate set and exponential in `d`;
/// it is meant as an independent geometric check on small instances.
pub fn largest_grid_quasibox(a: &Matrix, denominator: usize) -> Result<(usize, Quasibox)> {
    if denominator == 0 {
        return Err(Error::InvalidArgument(
            "grid denominator must be positive".into(),
        ));
    }
    let search = GridSearch::new(a, denominator);
    let epsilon = Scalar::from_ratio(1, denominator as i64)?;
    for k in (1..=search.d).rev() {
        if let Some((labels, level_choice, fixed_choice)) = search.find(k) {
            let mut center = vec![Scalar::zero(); search.d];
            let fixed_coords: Vec<usize> = (0..search.d).filter(|&l| labels[l] == 0).collect();
            for (slot, &l) in fixed_coords.iter().enumerate() {
                center[l] = search.values[search.fixed[fixed_choice[slot]] as usize].clone();
            }
            let mut blocks = vec![Vec::new(); k];
            for l in 0..search.d {
                if labels[l] > 0 {
                    let block = labels[l] - 1;
                    blocks[block].push(l);
                    center[l] =
                        search.values[search.levels[level_choice[block]][1] as usize].clone();
                }
            }
            return Ok((k, Quasibox::new(Vector::new(center)?, blocks, epsilon)?));
        }
    }
    Ok((0, Quasibox::new(a.column(0), Vec::new(), epsilon)?))
}

pub fn dimension_lower_bound(a: &Matrix, grid_denominator: usize) -> Result<usize> {
    largest_grid_quasibox(a, grid_denominator).map(|(k, _)| k)
}
