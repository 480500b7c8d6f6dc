//! Carleson boxes for diagonal generators with observation columns `c_n = C e_n`.
//!
//! A box `Q(h, ω) = {0 ≤ Re z ≤ h, |Im z − ω| ≤ h}` collects the modes with
//! `−λ_n ∈ Q`. Its operator is `S = Σ |λ_n|^{2α} c_n c_n*`, whose norm equals the
//! largest eigenvalue of the Gram matrix `G_jk = |λ_j|^α |λ_k|^α ⟨c_k, c_j⟩`.
//! Members whose columns share no coordinates give orthogonal blocks, so the
//! Gram matrix is split into connected blocks before any eigenvalue solve.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::spectra::{is_growing, Spectrum, DIVERGENCE_THRESHOLD};

/// Blocks up to this size use cyclic Jacobi; larger ones use power iteration.
pub const JACOBI_MAX: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CarlesonBox {
    pub h: f64,
    pub omega: f64,
}

impl CarlesonBox {
    pub fn new(h: f64, omega: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() || !omega.is_finite() {
            return Err(invalid(format!("box needs h > 0 and finite ω (got h = {h}, ω = {omega})")));
        }
        Ok(CarlesonBox { h, omega })
    }

    /// Whether `−λ` lies in the box.
    pub fn contains_mode(&self, lambda: Complex64) -> bool {
        let (re, im) = (-lambda.re, -lambda.im);
        (0.0..=self.h).contains(&re) && (im - self.omega).abs() <= self.h
    }
}

/// Sparse columns `c_n`, one per mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnFamily {
    columns: Vec<Vec<(usize, Complex64)>>,
    dim: usize,
    disjoint: bool,
}

impl ColumnFamily {
    /// Columns given as `(coordinate, value)` lists; zero entries are dropped.
    pub fn from_sparse(columns: Vec<Vec<(usize, Complex64)>>, dim: usize) -> Result<Self> {
        let mut cols = Vec::with_capacity(columns.len());
        for (n, mut col) in columns.into_iter().enumerate() {
            if col.iter().any(|(_, v)| !v.re.is_finite() || !v.im.is_finite()) {
                return Err(invalid(format!("column {} has a non-finite entry", n + 1)));
            }
            if let Some((i, _)) = col.iter().find(|(i, _)| *i >= dim) {
                return Err(invalid(format!("column {} has coordinate {} beyond dimension {dim}", n + 1, i + 1)));
            }
            col.retain(|(_, v)| v.norm_sqr() > 0.0);
            col.sort_by_key(|e| e.0);
            col.dedup_by(|b, a| {
                if a.0 == b.0 {
                    a.1 += b.1;
                    true
                } else {
                    false
                }
            });
            cols.push(col);
        }
        let mut seen = vec![false; dim];
        let mut disjoint = true;
        for col in &cols {
            for (i, _) in col {
                if std::mem::replace(&mut seen[*i], true) {
                    disjoint = false;
                }
            }
        }
        Ok(ColumnFamily { columns: cols, dim, disjoint })
    }

    /// Dense columns, e.g. from a spectrum document.
    pub fn from_dense(columns: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = columns.iter().map(Vec::len).max().unwrap_or(0);
        let sparse = columns.into_iter().map(|c| c.into_iter().enumerate().collect()).collect();
        ColumnFamily::from_sparse(sparse, dim)
    }

    /// `c_n = w_n e_n`.
    pub fn diagonal(weights: &[f64]) -> Result<Self> {
        let cols = weights.iter().enumerate().map(|(n, &w)| vec![(n, Complex64::new(w, 0.0))]).collect();
        ColumnFamily::from_sparse(cols, weights.len())
    }

    /// `c_n = |λ_n|^{−s} e_n`.
    pub fn diagonal_power(spec: &Spectrum, s: f64) -> Result<Self> {
        let w: Vec<f64> = spec.modes().iter().map(|z| z.norm().powf(-s)).collect();
        ColumnFamily::diagonal(&w)
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether distinct columns have disjoint supports (hence are orthogonal).
    pub fn is_orthogonal(&self) -> bool {
        self.disjoint
    }

    pub fn column(&self, n: usize) -> &[(usize, Complex64)] {
        &self.columns[n - 1]
    }

    pub fn truncate(&self, n: usize) -> ColumnFamily {
        let columns: Vec<_> = self.columns[..n.min(self.columns.len())].to_vec();
        ColumnFamily { columns, dim: self.dim, disjoint: self.disjoint }
    }

    fn norm_sqr(&self, n: usize) -> f64 {
        self.columns[n].iter().map(|(_, v)| v.norm_sqr()).sum()
    }
}

fn inner(a: &[(usize, Complex64)], b: &[(usize, Complex64)]) -> Complex64 {
    // ⟨a, b⟩ = Σ a_i conj(b_i), both sorted by coordinate
    let (mut i, mut j) = (0, 0);
    let mut s = Complex64::new(0.0, 0.0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += a[i].1 * b[j].1.conj();
                i += 1;
                j += 1;
            }
        }
    }
    s
}

/// 1-based indices `n` with `−λ_n` in the box.
pub fn box_members(spec: &Spectrum, q: &CarlesonBox) -> Vec<usize> {
    spec.modes().iter().enumerate().filter(|(_, z)| q.contains_mode(**z)).map(|(i, _)| i + 1).collect()
}

fn check_columns(spec: &Spectrum, cols: &ColumnFamily) -> Result<()> {
    if cols.len() != spec.n_max() {
        return Err(invalid(format!("{} columns for {} modes", cols.len(), spec.n_max())));
    }
    Ok(())
}

/// Gram matrix over `members` (1-based), row-major.
pub fn gram_matrix(spec: &Spectrum, cols: &ColumnFamily, alpha: f64, members: &[usize]) -> Result<Vec<Complex64>> {
    check_columns(spec, cols)?;
    check_members(spec, members)?;
    let w: Vec<f64> = members.iter().map(|&n| spec.modes()[n - 1].norm().powf(alpha)).collect();
    let m = members.len();
    let mut g = vec![Complex64::new(0.0, 0.0); m * m];
    for j in 0..m {
        for k in j..m {
            let v = inner(cols.column(members[k]), cols.column(members[j])) * (w[j] * w[k]);
            g[j * m + k] = v;
            g[k * m + j] = v.conj();
        }
    }
    Ok(g)
}

fn check_members(spec: &Spectrum, members: &[usize]) -> Result<()> {
    if let Some(n) = members.iter().find(|&&n| n == 0 || n > spec.n_max()) {
        return Err(invalid(format!("member index {n} outside 1..={}", spec.n_max())));
    }
    Ok(())
}

/// `‖Σ_{n ∈ members} |λ_n|^{2α} c_n c_n*‖`; zero for an empty set.
pub fn box_norm(spec: &Spectrum, cols: &ColumnFamily, alpha: f64, members: &[usize]) -> Result<f64> {
    check_columns(spec, cols)?;
    check_members(spec, members)?;
    let rank_one = |n: usize| spec.modes()[n - 1].norm().powf(2.0 * alpha) * cols.norm_sqr(n - 1);
    if cols.is_orthogonal() {
        return Ok(members.iter().map(|&n| rank_one(n)).fold(0.0, f64::max));
    }
    let mut best: f64 = 0.0;
    for block in connected_blocks(cols, members) {
        let v = if block.len() == 1 {
            rank_one(block[0])
        } else {
            let g = gram_matrix(spec, cols, alpha, &block)?;
            largest_eigenvalue(&g, block.len())
        };
        best = best.max(v);
    }
    Ok(best)
}

/// Groups members whose columns are linked through shared coordinates.
fn connected_blocks(cols: &ColumnFamily, members: &[usize]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (slot, &n) in members.iter().enumerate() {
        for (i, _) in cols.column(n) {
            match owner.get(i) {
                Some(&other) => {
                    let (a, b) = (find(&mut parent, slot), find(&mut parent, other));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    owner.insert(*i, slot);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for (slot, &n) in members.iter().enumerate() {
        let r = find(&mut parent, slot);
        let g = *index.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(n);
    }
    groups
}

/// Largest eigenvalue of a Hermitian positive semidefinite `m × m` matrix.
pub fn largest_eigenvalue(g: &[Complex64], m: usize) -> f64 {
    assert_eq!(g.len(), m * m);
    if m == 0 {
        return 0.0;
    }
    if m <= JACOBI_MAX {
        jacobi_largest(g, m)
    } else {
        power_largest(g, m)
    }
}

/// Cyclic Jacobi on the real symmetric embedding `[[Re G, −Im G], [Im G, Re G]]`
/// (or on `Re G` directly when `G` is real).
pub(crate) fn jacobi_largest(g: &[Complex64], m: usize) -> f64 {
    let real = g.iter().all(|z| z.im == 0.0);
    let n = if real { m } else { 2 * m };
    let mut a = vec![0.0; n * n];
    for j in 0..m {
        for k in 0..m {
            let z = g[j * m + k];
            a[j * n + k] = z.re;
            if !real {
                a[(j + m) * n + (k + m)] = z.re;
                a[j * n + (k + m)] = -z.im;
                a[(j + m) * n + k] = z.im;
            }
        }
    }
    let total: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|p| ((p + 1)..n).map(move |q| (p, q))).map(|(p, q)| a[p * n + q].powi(2)).sum();
        if off.sqrt() <= 1e-15 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn power_largest(g: &[Complex64], m: usize) -> f64 {
    // deterministic start with components in every direction
    let mut v: Vec<Complex64> = (0..m).map(|i| Complex64::new(1.0 + 0.01 * i as f64, 0.001 * i as f64)).collect();
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nv = norm(&v);
    v.iter_mut().for_each(|z| *z /= nv);
    let mut lambda = 0.0;
    let mut w = vec![Complex64::new(0.0, 0.0); m];
    for _ in 0..100_000 {
        for j in 0..m {
            w[j] = (0..m).map(|k| g[j * m + k] * v[k]).sum();
        }
        let rayleigh: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        let nw = norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        for j in 0..m {
            v[j] = w[j] / nw;
        }
        if (rayleigh - lambda).abs() <= 1e-14 * rayleigh.abs() {
            return rayleigh.max(nw.min(rayleigh * (1.0 + 1e-12)));
        }
        lambda = rayleigh;
    }
    lambda
}

/// Mode-anchored dyadic boxes: for each mode, `ω = −Im λ_n` and
/// `h = |Re λ_n| 2^j` for `j = 0..=j_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CarlesonSampler {
    pub j_max: u32,
}

impl Default for CarlesonSampler {
    fn default() -> Self {
        CarlesonSampler { j_max: 20 }
    }
}

impl CarlesonSampler {
    pub fn boxes(&self, spec: &Spectrum) -> Vec<CarlesonBox> {
        let mut out = Vec::with_capacity(spec.n_max() * (self.j_max as usize + 1));
        for z in spec.modes() {
            for j in 0..=self.j_max {
                out.push(CarlesonBox { h: -z.re * 2f64.powi(j as i32), omega: -z.im });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CarlesonReport {
    pub alpha: f64,
    pub j_max: u32,
    /// `max box_norm / h` over the sampled boxes: a lower bound on the Carleson constant.
    pub m_hat: f64,
    pub worst_box: CarlesonBox,
    pub worst_members: usize,
    /// The same scan with spectrum and columns truncated to `n_coarse` modes.
    pub m_hat_coarse: f64,
    pub boxes: usize,
    pub n_max: usize,
    pub n_coarse: usize,
    pub family_tag: String,
    pub divergent: bool,
}

impl CarlesonReport {
    pub fn growth(&self) -> f64 {
        self.m_hat / self.m_hat_coarse
    }
}

struct Scan {
    m_hat: f64,
    worst: CarlesonBox,
    members: usize,
    boxes: usize,
}

fn scan(spec: &Spectrum, cols: &ColumnFamily, alpha: f64, boxes: &[CarlesonBox]) -> Result<Scan> {
    // modes sorted by Im(−λ) for range queries
    let mut order: Vec<usize> = (0..spec.n_max()).collect();
    order.sort_by(|&a, &b| (-spec.modes()[a].im).total_cmp(&-spec.modes()[b].im).then(a.cmp(&b)));
    let keys: Vec<f64> = order.iter().map(|&i| -spec.modes()[i].im).collect();
    let mut best = Scan { m_hat: f64::NEG_INFINITY, worst: boxes[0], members: 0, boxes: boxes.len() };
    let mut members = Vec::new();
    for q in boxes {
        let lo = keys.partition_point(|&k| k < q.omega - q.h);
        let hi = keys.partition_point(|&k| k <= q.omega + q.h);
        members.clear();
        members.extend(order[lo..hi].iter().filter(|&&i| q.contains_mode(spec.modes()[i])).map(|&i| i + 1));
        members.sort_unstable();
        let ratio = box_norm(spec, cols, alpha, &members)? / q.h;
        if ratio > best.m_hat {
            best = Scan { m_hat: ratio, worst: *q, members: members.len(), boxes: boxes.len() };
        }
    }
    Ok(best)
}

/// Sampled Carleson constant at the full and the coarse truncation.
pub fn carleson_constant(
    spec: &Spectrum,
    cols: &ColumnFamily,
    alpha: f64,
    sampler: &CarlesonSampler,
) -> Result<CarlesonReport> {
    carleson_constant_on(spec, cols, alpha, |s| sampler.boxes(s), sampler.j_max)
}

/// As [`carleson_constant`] with an arbitrary box generator.
pub fn carleson_constant_on<B: Fn(&Spectrum) -> Vec<CarlesonBox>>(
    spec: &Spectrum,
    cols: &ColumnFamily,
    alpha: f64,
    boxes: B,
    j_max: u32,
) -> Result<CarlesonReport> {
    if !(alpha >= 0.0) {
        return Err(invalid(format!("α = {alpha} must be nonnegative")));
    }
    check_columns(spec, cols)?;
    let full = boxes(spec);
    if full.is_empty() {
        return Err(Error::InvalidArgument("sampler produced no boxes".into()));
    }
    let n_coarse = spec.n_coarse();
    let coarse_spec = spec.truncate(n_coarse);
    let coarse_boxes = boxes(&coarse_spec);
    if coarse_boxes.is_empty() {
        return Err(Error::InvalidArgument("sampler produced no boxes".into()));
    }
    let fine = scan(spec, cols, alpha, &full)?;
    let coarse = scan(&coarse_spec, &cols.truncate(n_coarse), alpha, &coarse_boxes)?;
    Ok(CarlesonReport {
        alpha,
        j_max,
        m_hat: fine.m_hat,
        worst_box: fine.worst,
        worst_members: fine.members,
        m_hat_coarse: coarse.m_hat,
        boxes: fine.boxes,
        n_max: spec.n_max(),
        n_coarse,
        family_tag: spec.family_label(),
        divergent: is_growing(fine.m_hat, coarse.m_hat, DIVERGENCE_THRESHOLD),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ex33(n: usize) -> Spectrum {
        Spectrum::builtin_family("example33", &[], n).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_dense(rng: &mut ChaCha8Rng, m: usize, dim: usize) -> ColumnFamily {
        let cols = (0..m).map(|_| (0..dim).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect());
        ColumnFamily::from_dense(cols.collect()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let spec = ex33(10);
        // the box is closed: −λ₂ = 1/2 − 2i sits on its lower edge
        assert_eq!(box_members(&spec, &CarlesonBox::new(1.0, -1.0).unwrap()), vec![1, 2]);
        assert_eq!(box_members(&spec, &CarlesonBox::new(1.0, -0.9).unwrap()), vec![1]);
        assert_eq!(box_members(&spec, &CarlesonBox::new(1.0 / 3.0, -3.0).unwrap()), vec![3]);
        assert!(box_members(&spec, &CarlesonBox::new(0.5, 20.0).unwrap()).is_empty());
        assert!(CarlesonBox::new(0.0, 1.0).is_err());
    }

    #[test]
    fn norm_examples() {
        let spec = ex33(4);
        let cols = random_dense(&mut ChaCha8Rng::seed_from_u64(3), 4, 3);
        let l = spec.modes()[1].norm();
        let cn: f64 = cols.column(2).iter().map(|e| e.1.norm_sqr()).sum();
        assert_relative_eq!(box_norm(&spec, &cols, 0.7, &[2]).unwrap(), l.powf(1.4) * cn, max_relative = 1e-13);
        assert_eq!(box_norm(&spec, &cols, 0.7, &[]).unwrap(), 0.0);

        let orth = ColumnFamily::from_sparse(vec![vec![(0, c(2.0, 0.0))], vec![(1, c(0.0, 3.0))], vec![], vec![]], 2)
            .unwrap();
        let v = box_norm(&spec, &orth, 0.0, &[1, 2]).unwrap();
        assert_relative_eq!(v, 9.0, max_relative = 1e-15);

        let spec = ex33(200);
        let diag = ColumnFamily::diagonal_power(&spec, 0.5).unwrap();
        let all: Vec<usize> = (1..=200).collect();
        assert_relative_eq!(box_norm(&spec, &diag, 0.5, &all).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn gram_path_matches_closed_form_for_orthogonal_columns() {
        // orthogonal but overlapping coordinates in a rotated basis: force the Gram path
        let spec = ex33(6);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let cols = ColumnFamily::from_sparse(
            vec![
                vec![(0, c(s, 0.0)), (1, c(s, 0.0))],
                vec![(0, c(0.0, 2.0 * s)), (1, c(0.0, -2.0 * s))],
                vec![(2, c(0.5, 0.0))],
                vec![(3, c(1.0, 1.0))],
                vec![(4, c(3.0, 0.0))],
                vec![(5, c(0.1, 0.0))],
            ],
            6,
        )
        .unwrap();
        assert!(!cols.is_orthogonal());
        let alpha = 0.3;
        let members = [1, 2, 3, 4];
        let expected = members
            .iter()
            .map(|&n| {
                let cn: f64 = cols.column(n).iter().map(|e| e.1.norm_sqr()).sum();
                spec.modes()[n - 1].norm().powf(2.0 * alpha) * cn
            })
            .fold(0.0, f64::max);
        let v = box_norm(&spec, &cols, alpha, &members).unwrap();
        assert!((v - expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn jacobi_and_power_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [5, 30, 70] {
            let spec = ex33(m);
            let cols = random_dense(&mut rng, m, m + 3);
            let members: Vec<usize> = (1..=m).collect();
            let g = gram_matrix(&spec, &cols, 0.25, &members).unwrap();
            let a = jacobi_largest(&g, m);
            let b = power_largest(&g, m);
            assert_relative_eq!(a, b, max_relative = 1e-9);
        }
    }

    #[test]
    fn jacobi_on_known_matrix() {
        // [[2, i], [−i, 2]] has eigenvalues 1 and 3
        let g = vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)];
        assert_relative_eq!(jacobi_largest(&g, 2), 3.0, max_relative = 1e-14);
        let g = vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        assert_relative_eq!(jacobi_largest(&g, 2), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn adding_members_never_decreases() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let spec = ex33(12);
        let cols = random_dense(&mut rng, 12, 4);
        let mut members = Vec::new();
        let mut last = 0.0;
        for n in 1..=12 {
            members.push(n);
            let v = box_norm(&spec, &cols, 0.4, &members).unwrap();
            assert!(v >= last * (1.0 - 1e-12));
            last = v;
        }
    }

    #[test]
    fn constant_examples() {
        let single = Spectrum::builtin_family("single", &[1.0], 1).unwrap();
        let cols = ColumnFamily::diagonal(&[1.0]).unwrap();
        let r = carleson_constant(&single, &cols, 0.0, &CarlesonSampler::default()).unwrap();
        assert_relative_eq!(r.m_hat, 1.0, max_relative = 1e-15);
        assert_eq!(r.worst_box.h, 1.0);

        let spec = ex33(1000);
        let grows = ColumnFamily::diagonal_power(&spec, 0.5).unwrap();
        let r = carleson_constant(&spec, &grows, 0.5, &CarlesonSampler::default()).unwrap();
        assert_relative_eq!(r.m_hat, 1000.0, max_relative = 1e-12);
        assert!(r.divergent);
        let bounded = ColumnFamily::diagonal_power(&spec, 1.0).unwrap();
        let r = carleson_constant(&spec, &bounded, 0.5, &CarlesonSampler::default()).unwrap();
        assert!(r.m_hat <= 1.0 && r.m_hat > 0.99, "{r:?}");
        assert!(!r.divergent);

        let none = carleson_constant_on(&spec, &bounded, 0.5, |_| Vec::new(), 0);
        assert!(none.is_err());
    }

    #[test]
    fn range_query_matches_linear_scan() {
        let spec = Spectrum::builtin_family("powerlaw", &[0.7, 0.5], 300).unwrap();
        let cols = ColumnFamily::diagonal_power(&spec, 0.9).unwrap();
        let boxes = CarlesonSampler { j_max: 6 }.boxes(&spec);
        let fast = scan(&spec, &cols, 0.3, &boxes).unwrap().m_hat;
        let slow = boxes
            .iter()
            .map(|q| box_norm(&spec, &cols, 0.3, &box_members(&spec, q)).unwrap() / q.h)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(fast, slow);
    }
}
