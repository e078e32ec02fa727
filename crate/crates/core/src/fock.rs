//! Truncated Fock space over a momentum lattice and the second-quantized
//! position operator `X = Σ a†(k,λ) a(k,λ) (i∇_k)`.
//!
//! The lattice gradient is the periodic central difference, so on a
//! one-photon state with coefficients `c(k, λ)`
//!
//! ```text
//! (X_j c)(k, λ) = i [c(k + Δ e_j, λ) − c(k − Δ e_j, λ)] / 2Δ
//! ```
//!
//! and on many-photon states `X` acts as the corresponding one-body operator.
//! `X` adds up the positions of all photons; it is not divided by the photon
//! number.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::momentum_basis::{
    localized_amplitude, spinor_f, spinor_g, Helicity, KVector, MomentumWavefunction,
    SmoothDomain,
};
use crate::position::{
    DifferenceOrder, FiniteDifferenceScheme, PositionOperator, PositionOperatorKind,
};

/// Regular rectangular grid of wavenumbers, `k = corner + (i, j, l) Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumLattice {
    corner: [f64; 3],
    spacing: f64,
    counts: [usize; 3],
    periodic: bool,
    points: Vec<KVector>,
}

impl MomentumLattice {
    pub fn new(corner: [f64; 3], spacing: f64, counts: [usize; 3], periodic: bool) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidLattice(format!("spacing must be positive, got {spacing}")));
        }
        if counts.iter().any(|&n| n == 0) || corner.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidLattice(format!("bad shape {counts:?} at {corner:?}")));
        }
        let mut points = Vec::with_capacity(counts.iter().product());
        for l in 0..counts[2] {
            for j in 0..counts[1] {
                for i in 0..counts[0] {
                    let k = KVector::new(
                        corner[0] + i as f64 * spacing,
                        corner[1] + j as f64 * spacing,
                        corner[2] + l as f64 * spacing,
                    );
                    if k.omega() <= 1e-9 * spacing {
                        return Err(Error::LatticeContainsOrigin);
                    }
                    points.push(k);
                }
            }
        }
        Ok(MomentumLattice { corner, spacing, counts, periodic, points })
    }

    /// `n³` points centred on `center`.
    pub fn cubic(center: [f64; 3], spacing: f64, n: usize, periodic: bool) -> Result<Self> {
        let half = (n as f64 - 1.0) / 2.0 * spacing;
        let corner = [center[0] - half, center[1] - half, center[2] - half];
        Self::new(corner, spacing, [n, n, n], periodic)
    }

    /// Periodic lattice for a box of side `L`, spacing `2π/L`.
    pub fn for_box(center: [f64; 3], side: f64, n: usize) -> Result<Self> {
        Self::cubic(center, 2.0 * PI / side, n, true)
    }

    pub fn points(&self) -> &[KVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn counts(&self) -> [usize; 3] {
        self.counts
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    fn flat(&self, idx: [usize; 3]) -> usize {
        idx[0] + self.counts[0] * (idx[1] + self.counts[1] * idx[2])
    }

    fn unflat(&self, p: usize) -> [usize; 3] {
        let i = p % self.counts[0];
        let j = (p / self.counts[0]) % self.counts[1];
        [i, j, p / (self.counts[0] * self.counts[1])]
    }

    /// Index of the point `offset` steps from point `p` along `axis`.
    pub fn neighbor(&self, p: usize, axis: usize, offset: isize) -> Option<usize> {
        let mut idx = self.unflat(p);
        let n = self.counts[axis] as isize;
        let shifted = idx[axis] as isize + offset;
        let wrapped = if self.periodic {
            shifted.rem_euclid(n)
        } else if (0..n).contains(&shifted) {
            shifted
        } else {
            return None;
        };
        idx[axis] = wrapped as usize;
        Some(self.flat(idx))
    }

    /// Point index of `k`, wrapping periodically; `None` off the grid.
    pub fn locate(&self, k: &KVector) -> Option<usize> {
        let mut idx = [0usize; 3];
        for axis in 0..3 {
            let t = (k.0[axis] - self.corner[axis]) / self.spacing;
            let r = t.round();
            if (t - r).abs() > 1e-6 {
                return None;
            }
            let n = self.counts[axis] as i64;
            let r = r as i64;
            idx[axis] = if self.periodic {
                r.rem_euclid(n) as usize
            } else if (0..n).contains(&r) {
                r as usize
            } else {
                return None;
            };
        }
        Some(self.flat(idx))
    }

    /// Number of `(k, λ)` modes.
    pub fn mode_count(&self) -> usize {
        3 * self.points.len()
    }

    pub fn mode(&self, point: usize, helicity: Helicity) -> usize {
        3 * point + helicity.index()
    }

    pub fn mode_parts(&self, mode: usize) -> (usize, Helicity) {
        (mode / 3, Helicity::ALL[mode % 3])
    }

    /// Lattice coefficients `c(k, λ)` as a 3-component wavefunction (one
    /// component per helicity) defined only on the lattice points.
    pub fn coefficient_field(&self, coeffs: &[Complex64]) -> Result<MomentumWavefunction> {
        if coeffs.len() != self.mode_count() {
            return Err(Error::ComponentMismatch { expected: self.mode_count(), found: coeffs.len() });
        }
        let lattice = self.clone();
        let coeffs = coeffs.to_vec();
        Ok(MomentumWavefunction::new(3, SmoothDomain::EVERYWHERE, move |k| {
            let p = lattice.locate(k).ok_or(Error::OutsideDomain(k.to_array()))?;
            Ok(DVector::from_column_slice(&coeffs[3 * p..3 * p + 3]))
        }))
    }
}

/// Occupation numbers, one entry per mode.
pub type Occupation = Vec<u8>;

/// Occupation-number basis with at most `n_max` photons per mode and
/// `max_total` photons overall.
#[derive(Clone, Debug)]
pub struct FockSpace {
    modes: usize,
    n_max: u8,
    max_total: usize,
    states: Vec<Occupation>,
    index: HashMap<Occupation, usize>,
}

impl FockSpace {
    pub fn new(modes: usize, n_max: u8, max_total: usize) -> Self {
        let mut states = Vec::new();
        let mut current = vec![0u8; modes];
        // enumerate sector by sector so the basis is ordered by photon number
        for total in 0..=max_total {
            enumerate(&mut current, 0, total, n_max, &mut states);
        }
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        FockSpace { modes, n_max, max_total, states, index }
    }

    /// Space for all modes of `lattice`.
    pub fn for_lattice(lattice: &MomentumLattice, n_max: u8, max_total: usize) -> Self {
        Self::new(lattice.mode_count(), n_max, max_total)
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn n_max(&self) -> u8 {
        self.n_max
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    pub fn state(&self, i: usize) -> &Occupation {
        &self.states[i]
    }

    pub fn index_of(&self, occ: &[u8]) -> Option<usize> {
        self.index.get(occ).copied()
    }

    pub fn vacuum(&self) -> DVector<Complex64> {
        let mut v = DVector::zeros(self.dim());
        v[0] = Complex64::new(1.0, 0.0);
        v
    }

    /// `Σ_m c_m a†_m |0⟩`.
    pub fn one_photon(&self, coeffs: &[Complex64]) -> Result<DVector<Complex64>> {
        if coeffs.len() != self.modes {
            return Err(Error::ComponentMismatch { expected: self.modes, found: coeffs.len() });
        }
        self.create_on(coeffs, &self.vacuum())
    }

    /// One-photon coefficients `c_m` of a state (other sectors ignored).
    pub fn one_photon_coefficients(&self, state: &DVector<Complex64>) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.modes];
        let mut occ = vec![0u8; self.modes];
        for (m, c) in out.iter_mut().enumerate() {
            occ[m] = 1;
            if let Some(i) = self.index_of(&occ) {
                *c = state[i];
            }
            occ[m] = 0;
        }
        out
    }

    /// `(Σ_m c_m a†_m) ψ` without building the operator; only occupied
    /// basis states of `ψ` are visited. Components raised past the
    /// truncation are dropped.
    pub fn create_on(&self, coeffs: &[Complex64], psi: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if coeffs.len() != self.modes {
            return Err(Error::ComponentMismatch { expected: self.modes, found: coeffs.len() });
        }
        if psi.len() != self.dim() {
            return Err(Error::ComponentMismatch { expected: self.dim(), found: psi.len() });
        }
        let mut out = DVector::zeros(self.dim());
        for (j, &amp) in psi.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let occ = &self.states[j];
            for (m, &c) in coeffs.iter().enumerate() {
                let mut raised = occ.clone();
                raised[m] += 1;
                if let Some(i) = self.index_of(&raised) {
                    out[i] += c * amp * f64::from(raised[m]).sqrt();
                }
            }
        }
        Ok(out)
    }

    /// `Σ_m c_m a†_m`.
    pub fn creation_sum(&self, coeffs: &[Complex64]) -> Result<LatticeOperator> {
        if coeffs.len() != self.modes {
            return Err(Error::ComponentMismatch { expected: self.modes, found: coeffs.len() });
        }
        let mut entries: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        let mut truncated = false;
        for (j, occ) in self.states.iter().enumerate() {
            for (m, &c) in coeffs.iter().enumerate() {
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let mut raised = occ.clone();
                raised[m] += 1;
                match self.index_of(&raised) {
                    Some(i) => *entries.entry((i, j)).or_default() += c * f64::from(raised[m]).sqrt(),
                    None => truncated = true,
                }
            }
        }
        Ok(LatticeOperator::from_entries(self.dim(), entries, truncated))
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes {
            Err(Error::UnknownMode(mode))
        } else {
            Ok(())
        }
    }
}

fn enumerate(current: &mut Occupation, mode: usize, remaining: usize, n_max: u8, out: &mut Vec<Occupation>) {
    if mode == current.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    let top = remaining.min(n_max as usize);
    for n in (0..=top).rev() {
        current[mode] = n as u8;
        enumerate(current, mode + 1, remaining - n, n_max, out);
    }
    current[mode] = 0;
}

/// Sparse linear map on a truncated Fock space, stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeOperator {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
    /// Set when some basis state was mapped outside the truncation and the
    /// component discarded.
    pub truncated: bool,
}

impl LatticeOperator {
    pub fn zeros(dim: usize) -> Self {
        LatticeOperator { dim, rows: vec![Vec::new(); dim], truncated: false }
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim).map(|i| vec![(i, Complex64::new(1.0, 0.0))]).collect();
        LatticeOperator { dim, rows, truncated: false }
    }

    fn from_entries(dim: usize, entries: BTreeMap<(usize, usize), Complex64>, truncated: bool) -> Self {
        let mut rows = vec![Vec::new(); dim];
        for ((r, c), v) in entries {
            if v != Complex64::new(0.0, 0.0) {
                rows[r].push((c, v));
            }
        }
        LatticeOperator { dim, rows, truncated }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        DVector::from_iterator(
            self.dim,
            self.rows.iter().map(|row| row.iter().map(|&(c, a)| a * v[c]).sum::<Complex64>()),
        )
    }

    pub fn scaled(&self, s: Complex64) -> LatticeOperator {
        let rows = self.rows.iter().map(|row| row.iter().map(|&(c, v)| (c, v * s)).collect()).collect();
        LatticeOperator { dim: self.dim, rows, truncated: self.truncated }
    }

    pub fn adjoint(&self) -> LatticeOperator {
        let mut entries = BTreeMap::new();
        for (r, c, v) in self.entries() {
            entries.insert((c, r), v.conj());
        }
        Self::from_entries(self.dim, entries, self.truncated)
    }

    pub fn matmul(&self, other: &LatticeOperator) -> LatticeOperator {
        let mut entries: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for &(mid, a) in row {
                for &(c, b) in &other.rows[mid] {
                    *entries.entry((r, c)).or_default() += a * b;
                }
            }
        }
        Self::from_entries(self.dim, entries, self.truncated || other.truncated)
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &LatticeOperator) -> LatticeOperator {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    /// `⟨ψ|A|ψ⟩ / ⟨ψ|ψ⟩`.
    pub fn expectation(&self, psi: &DVector<Complex64>) -> Complex64 {
        psi.dotc(&self.apply(psi)) / psi.norm_squared()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.entries() {
            m[(r, c)] += v;
        }
        m
    }

    fn combine(&self, other: &LatticeOperator, sign: f64) -> LatticeOperator {
        let mut entries: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for (r, c, v) in self.entries() {
            *entries.entry((r, c)).or_default() += v;
        }
        for (r, c, v) in other.entries() {
            *entries.entry((r, c)).or_default() += v * sign;
        }
        Self::from_entries(self.dim, entries, self.truncated || other.truncated)
    }
}

impl std::ops::Add for &LatticeOperator {
    type Output = LatticeOperator;
    fn add(self, rhs: &LatticeOperator) -> LatticeOperator {
        self.combine(rhs, 1.0)
    }
}

impl std::ops::Sub for &LatticeOperator {
    type Output = LatticeOperator;
    fn sub(self, rhs: &LatticeOperator) -> LatticeOperator {
        self.combine(rhs, -1.0)
    }
}

/// Annihilation operator `a(k, λ)` for mode index `mode`.
pub fn annihilate(space: &FockSpace, mode: usize) -> Result<LatticeOperator> {
    space.check_mode(mode)?;
    let mut entries = BTreeMap::new();
    for (j, occ) in space.states.iter().enumerate() {
        let n = occ[mode];
        if n > 0 {
            let mut lowered = occ.clone();
            lowered[mode] -= 1;
            let i = space.index_of(&lowered).expect("lowered state is in the basis");
            entries.insert((i, j), Complex64::new(f64::from(n).sqrt(), 0.0));
        }
    }
    Ok(LatticeOperator::from_entries(space.dim(), entries, false))
}

/// Creation operator `a†(k, λ)`; raising past the truncation drops the
/// component and sets [`LatticeOperator::truncated`].
pub fn create(space: &FockSpace, mode: usize) -> Result<LatticeOperator> {
    space.check_mode(mode)?;
    let mut entries = BTreeMap::new();
    let mut truncated = false;
    for (j, occ) in space.states.iter().enumerate() {
        let mut raised = occ.clone();
        raised[mode] += 1;
        match space.index_of(&raised) {
            Some(i) => {
                entries.insert((i, j), Complex64::new(f64::from(raised[mode]).sqrt(), 0.0));
            }
            None => truncated = true,
        }
    }
    Ok(LatticeOperator::from_entries(space.dim(), entries, truncated))
}

/// Total photon number `N = Σ a†a`.
pub fn number_operator(space: &FockSpace) -> LatticeOperator {
    let mut entries = BTreeMap::new();
    for (i, occ) in space.states.iter().enumerate() {
        let n: u32 = occ.iter().map(|&x| u32::from(x)).sum();
        entries.insert((i, i), Complex64::new(f64::from(n), 0.0));
    }
    LatticeOperator::from_entries(space.dim(), entries, false)
}

/// One-body operator `Σ_{m,m′} h(m, m′) a†_m a_{m′}` from a sparse
/// single-particle matrix.
pub fn one_body(space: &FockSpace, single: &[(usize, usize, Complex64)]) -> Result<LatticeOperator> {
    let mut by_source: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
    for &(m, mp, v) in single {
        space.check_mode(m)?;
        space.check_mode(mp)?;
        by_source.entry(mp).or_default().push((m, v));
    }
    let mut entries: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
    let mut truncated = false;
    for (j, occ) in space.states.iter().enumerate() {
        for (&mp, targets) in &by_source {
            let n_src = occ[mp];
            if n_src == 0 {
                continue;
            }
            let mut lowered = occ.clone();
            lowered[mp] -= 1;
            for &(m, v) in targets {
                let mut out = lowered.clone();
                out[m] += 1;
                match space.index_of(&out) {
                    Some(i) => {
                        let amp = (f64::from(n_src) * f64::from(out[m])).sqrt();
                        *entries.entry((i, j)).or_default() += v * amp;
                    }
                    None => truncated = true,
                }
            }
        }
    }
    Ok(LatticeOperator::from_entries(space.dim(), entries, truncated))
}

/// Single-particle matrix of `i∂/∂k_axis` on the periodic lattice.
pub fn lattice_gradient(
    lattice: &MomentumLattice,
    axis: usize,
    order: DifferenceOrder,
) -> Result<Vec<(usize, usize, Complex64)>> {
    if !lattice.is_periodic() {
        return Err(Error::NonPeriodicLattice);
    }
    let need = match order {
        DifferenceOrder::Second => 3,
        DifferenceOrder::Fourth => 5,
    };
    let n = lattice.counts()[axis];
    if n < need {
        return Err(Error::LatticeTooSmall(n));
    }
    let d = lattice.spacing();
    let stencil: &[(isize, f64)] = match order {
        DifferenceOrder::Second => &[(1, 0.5), (-1, -0.5)],
        DifferenceOrder::Fourth => &[(1, 8.0 / 12.0), (-1, -8.0 / 12.0), (2, -1.0 / 12.0), (-2, 1.0 / 12.0)],
    };
    let mut out = Vec::new();
    for p in 0..lattice.len() {
        for &(offset, w) in stencil {
            let q = lattice.neighbor(p, axis, offset).expect("periodic lattice");
            for h in Helicity::ALL {
                out.push((lattice.mode(p, h), lattice.mode(q, h), Complex64::new(0.0, w / d)));
            }
        }
    }
    Ok(out)
}

/// The three components of `X` on `space`.
pub fn position_x(
    lattice: &MomentumLattice,
    space: &FockSpace,
    order: DifferenceOrder,
) -> Result<[LatticeOperator; 3]> {
    if space.modes() != lattice.mode_count() {
        return Err(Error::ComponentMismatch { expected: lattice.mode_count(), found: space.modes() });
    }
    let build = |axis| one_body(space, &lattice_gradient(lattice, axis, order)?);
    Ok([build(0)?, build(1)?, build(2)?])
}

/// `⟨X⟩` for a state.
pub fn position_expectation(x: &[LatticeOperator; 3], psi: &DVector<Complex64>) -> Vector3<Complex64> {
    Vector3::new(x[0].expectation(psi), x[1].expectation(psi), x[2].expectation(psi))
}

/// Max deviation between `X` on one-photon states and the naive first-quantized
/// operator `i∇_k` applied to the coefficient field with step `Δ`.
pub fn one_photon_equivalence(
    lattice: &MomentumLattice,
    space: &FockSpace,
    x: &[LatticeOperator; 3],
    samples: &[Vec<Complex64>],
) -> Result<f64> {
    let scheme = FiniteDifferenceScheme::second_order(lattice.spacing())?;
    let naive = PositionOperator::new(PositionOperatorKind::Naive);
    let mut worst = 0.0_f64;
    for coeffs in samples {
        let psi = space.one_photon(coeffs)?;
        let field = lattice.coefficient_field(coeffs)?;
        for (axis, op) in x.iter().enumerate() {
            let image = space.one_photon_coefficients(&op.apply(&psi));
            for (p, k) in lattice.points().iter().enumerate() {
                let first = &naive.apply(&field, k, &scheme)?[axis];
                for h in Helicity::ALL {
                    worst = worst.max((image[lattice.mode(p, h)] - first[h.index()]).norm());
                }
            }
        }
    }
    Ok(worst)
}

/// k-independent field coefficients: `a(λ)` for the positive-frequency part,
/// `b(λ)` for the negative-frequency part, and a common displacement `x0`
/// entering as `exp(−i x0·k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorField {
    pub plus: [Complex64; 3],
    pub minus: [Complex64; 3],
    pub center: [f64; 3],
}

impl SpinorField {
    /// `b = a`.
    pub fn identified(a: [Complex64; 3], center: [f64; 3]) -> Self {
        SpinorField { plus: a, minus: a, center }
    }

    /// `φ₊(k) = Σ_λ √ω a(λ) f(k, λ)`, times the displacement phase.
    pub fn positive(&self) -> MomentumWavefunction {
        let (a, x0) = (self.plus, self.center);
        MomentumWavefunction::new(6, SmoothDomain::POLARIZATION, move |k| {
            let amp = localized_amplitude(k, &x0);
            let mut acc = DVector::zeros(6);
            for h in Helicity::ALL {
                acc += spinor_f(k, h)?.to_vector() * (a[h.index()] * amp);
            }
            Ok(acc)
        })
    }

    /// `φ₋(k) = Σ_λ √ω b†(λ) g(−k, λ)`, times the displacement phase.
    pub fn negative(&self) -> MomentumWavefunction {
        let (b, x0) = (self.minus, self.center);
        MomentumWavefunction::new(6, SmoothDomain::REFLECTED_POLARIZATION, move |k| {
            let amp = localized_amplitude(k, &x0);
            let mut acc = DVector::zeros(6);
            for h in Helicity::ALL {
                acc += spinor_g(&k.reflected(), h)?.to_vector() * (b[h.index()].conj() * amp);
            }
            Ok(acc)
        })
    }

    /// Photon numbers `Σ|a|²` and `Σ|b|²`.
    pub fn photon_numbers(&self) -> (f64, f64) {
        let n = |c: &[Complex64; 3]| c.iter().map(|z| z.norm_sqr()).sum();
        (n(&self.plus), n(&self.minus))
    }
}

fn quadratic_form(
    op: &PositionOperator,
    phi: &MomentumWavefunction,
    k: &KVector,
    scheme: &FiniteDifferenceScheme,
) -> Result<(Vector3<Complex64>, f64)> {
    let value = phi.evaluate(k)?;
    let image = op.apply(phi, k, scheme)?;
    let q = Vector3::new(value.dotc(&image[0]), value.dotc(&image[1]), value.dotc(&image[2]));
    Ok((q, value.norm_squared()))
}

/// `Σ_k (1/2ω) [φ₊†X̂₊φ₊ + φ₋†X̂₋φ₋]` over the lattice points.
pub fn momentum_average_position(
    points: &[KVector],
    field: &SpinorField,
    scheme: &FiniteDifferenceScheme,
) -> Result<Vector3<Complex64>> {
    let plus_op = PositionOperator::new(PositionOperatorKind::SpinorPlus);
    let minus_op = PositionOperator::new(PositionOperatorKind::SpinorMinus);
    let (phi_p, phi_m) = (field.positive(), field.negative());
    let mut acc = Vector3::zeros();
    for k in points {
        let (qp, _) = quadratic_form(&plus_op, &phi_p, k, scheme)?;
        let (qm, _) = quadratic_form(&minus_op, &phi_m, k, scheme)?;
        acc += (qp + qm) / Complex64::from(2.0 * k.omega());
    }
    Ok(acc)
}

/// Per-point expectations `φ±†X̂±φ± / φ±†φ±` (zero where the field vanishes).
pub fn mode_expectations(
    k: &KVector,
    field: &SpinorField,
    scheme: &FiniteDifferenceScheme,
) -> Result<(Vector3<Complex64>, Vector3<Complex64>)> {
    let expect = |kind, phi: &MomentumWavefunction| -> Result<Vector3<Complex64>> {
        let (q, n) = quadratic_form(&PositionOperator::new(kind), phi, k, scheme)?;
        Ok(if n > 0.0 { q / Complex64::from(n) } else { Vector3::zeros() })
    };
    Ok((
        expect(PositionOperatorKind::SpinorPlus, &field.positive())?,
        expect(PositionOperatorKind::SpinorMinus, &field.negative())?,
    ))
}
