//! Irreducible representations of D_N and Fourier analysis over them.
//!
//! The irreps of D_N in the fixed standard basis: the trivial and sign
//! characters, two extra parity characters when N is even, and for each
//! 1 ≤ k < N/2 the two-dimensional representation
//!
//! ```text
//! ρ_k(a, 0) = [ ω^{ka}    0     ]      ρ_k(a, 1) = [   0     ω^{ka} ]
//!             [   0     ω^{-ka} ]                  [ ω^{-ka}   0    ]
//! ```
//!
//! with ω = exp(2πi/N). Matrices are generated on demand; everything is
//! dense complex double precision (dimensions never exceed 2).
//!
//! The Fourier transform of f: G → C at an irrep ρ is
//! f̂(ρ) = √(d_ρ/|G|) Σ_g f(g) ρ(g), inverted by
//! f(g) = Σ_ρ √(d_ρ/|G|) tr(ρ(g⁻¹) f̂(ρ)). With this normalization the
//! transform of a subgroup indicator I_H is proportional to the projection
//! P_ρ^H onto the pointwise H-fixed subspace: Î_H(ρ) = √(d_ρ/|G|)·|H|·P_ρ^H.
//! The reported scalar makes the proportionality explicit.

use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{DihedralGroup, GroupElement, Subgroup};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum IrrepKind {
    Trivial,
    /// (a,b) ↦ (-1)^b
    Sign,
    /// (a,b) ↦ (-1)^a, even N only
    RotParity,
    /// (a,b) ↦ (-1)^{a+b}, even N only
    MixedParity,
    /// The 2-dimensional ρ_k, 1 ≤ k < N/2
    Planar(u64),
}

/// One unitary irreducible representation of D_N.
#[derive(Clone, Debug)]
pub struct Irrep {
    group: DihedralGroup,
    kind: IrrepKind,
    label: String,
}

impl Irrep {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            IrrepKind::Planar(_) => 2,
            _ => 1,
        }
    }

    /// The representing unitary matrix ρ(g).
    pub fn matrix(&self, g: GroupElement) -> Array2<Complex64> {
        let sign = |bit: u64| if bit.is_multiple_of(2) { ONE } else { -ONE };
        match self.kind {
            IrrepKind::Trivial => Array2::from_elem((1, 1), ONE),
            IrrepKind::Sign => Array2::from_elem((1, 1), sign(g.b() as u64)),
            IrrepKind::RotParity => Array2::from_elem((1, 1), sign(g.a())),
            IrrepKind::MixedParity => Array2::from_elem((1, 1), sign(g.a() + g.b() as u64)),
            IrrepKind::Planar(k) => {
                let theta =
                    2.0 * std::f64::consts::PI * (k * g.a()) as f64 / self.group.n() as f64;
                let w = Complex64::from_polar(1.0, theta);
                let mut m = Array2::from_elem((2, 2), ZERO);
                if g.is_rotation() {
                    m[(0, 0)] = w;
                    m[(1, 1)] = w.conj();
                } else {
                    m[(0, 1)] = w;
                    m[(1, 0)] = w.conj();
                }
                m
            }
        }
    }

    pub fn character(&self, g: GroupElement) -> Complex64 {
        let m = self.matrix(g);
        (0..self.dim()).map(|i| m[(i, i)]).sum()
    }
}

/// A complete set of pairwise inequivalent unitary irreps of D_N.
/// Σ d_ρ² = 2N holds exactly.
#[derive(Clone, Debug)]
pub struct IrrepSet {
    group: DihedralGroup,
    irreps: Vec<Irrep>,
}

impl IrrepSet {
    pub fn group(&self) -> DihedralGroup {
        self.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn sum_of_squared_dims(&self) -> u64 {
        self.irreps.iter().map(|r| (r.dim() * r.dim()) as u64).sum()
    }
}

/// The standard complete irrep family of D_N.
pub fn irreps_of_dihedral(group: DihedralGroup) -> IrrepSet {
    let n = group.n();
    let mut irreps = vec![
        Irrep {
            group,
            kind: IrrepKind::Trivial,
            label: "triv".into(),
        },
        Irrep {
            group,
            kind: IrrepKind::Sign,
            label: "sgn".into(),
        },
    ];
    if n.is_multiple_of(2) {
        irreps.push(Irrep {
            group,
            kind: IrrepKind::RotParity,
            label: "par".into(),
        });
        irreps.push(Irrep {
            group,
            kind: IrrepKind::MixedParity,
            label: "parsgn".into(),
        });
    }
    for k in 1..n.div_ceil(2) {
        if 2 * k < n {
            irreps.push(Irrep {
                group,
                kind: IrrepKind::Planar(k),
                label: format!("rho{k}"),
            });
        }
    }
    IrrepSet { group, irreps }
}

/// Per-irrep Fourier coefficient matrices of one function on G.
#[derive(Clone, Debug)]
pub struct FourierCoefficients {
    mats: Vec<Array2<Complex64>>,
}

impl FourierCoefficients {
    pub fn matrices(&self) -> &[Array2<Complex64>] {
        &self.mats
    }

    /// Σ_ρ ‖f̂(ρ)‖²_F; equals Σ_g |f(g)|² (Plancherel).
    pub fn total_energy(&self) -> f64 {
        self.mats
            .iter()
            .map(|m| m.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum()
    }
}

/// f̂(ρ) = √(d_ρ/|G|) Σ_g f(g) ρ(g) for every ρ in the set. The function is
/// given as values indexed in (b, a)-lexicographic element order.
pub fn fourier_transform(values: &[Complex64], set: &IrrepSet) -> FourierCoefficients {
    let group = set.group;
    assert_eq!(values.len() as u64, group.order(), "function size mismatch");
    let order = group.order() as f64;
    let mats = set
        .irreps
        .iter()
        .map(|rho| {
            let d = rho.dim();
            let scale = (d as f64 / order).sqrt();
            let mut acc = Array2::from_elem((d, d), ZERO);
            for g in group.elements() {
                let f = values[g.index(group)];
                if f != ZERO {
                    acc = acc + rho.matrix(g).mapv(|z| z * f);
                }
            }
            acc.mapv(|z| z * scale)
        })
        .collect();
    FourierCoefficients { mats }
}

/// Inversion: f(g) = Σ_ρ √(d_ρ/|G|) tr(ρ(g⁻¹) f̂(ρ)). Errors if the
/// coefficient shapes do not match the irrep set.
pub fn inverse_fourier(coeffs: &FourierCoefficients, set: &IrrepSet) -> Result<Vec<Complex64>> {
    if coeffs.mats.len() != set.irreps.len() {
        return Err(Error::DimensionMismatch);
    }
    for (m, rho) in coeffs.mats.iter().zip(&set.irreps) {
        if m.dim() != (rho.dim(), rho.dim()) {
            return Err(Error::DimensionMismatch);
        }
    }
    let group = set.group;
    let order = group.order() as f64;
    let mut values = vec![ZERO; group.order() as usize];
    for g in group.elements() {
        let g_inv = group.inverse(g);
        let mut acc = ZERO;
        for (m, rho) in coeffs.mats.iter().zip(&set.irreps) {
            let scale = (rho.dim() as f64 / order).sqrt();
            let prod = rho.matrix(g_inv).dot(m);
            let trace: Complex64 = (0..rho.dim()).map(|i| prod[(i, i)]).sum();
            acc += trace * scale;
        }
        values[g.index(group)] = acc;
    }
    Ok(values)
}

/// Projection P_ρ^H = (1/|H|) Σ_{h∈H} ρ(h) onto the pointwise H-fixed
/// subspace. Idempotent and self-adjoint by construction.
pub fn projection_onto_fixed(rho: &Irrep, h: &Subgroup) -> Array2<Complex64> {
    let d = rho.dim();
    let mut acc = Array2::from_elem((d, d), ZERO);
    for &member in h.elements() {
        acc = acc + rho.matrix(member);
    }
    acc.mapv(|z| z / Complex64::new(h.order() as f64, 0.0))
}

/// Fourier transform of the indicator of the coset sH.
pub fn coset_fourier(s: GroupElement, h: &Subgroup, set: &IrrepSet) -> FourierCoefficients {
    let group = set.group;
    let mut values = vec![ZERO; group.order() as usize];
    for &member in h.elements() {
        values[group.multiply(s, member).index(group)] = ONE;
    }
    fourier_transform(&values, set)
}

/// One row of the indicator-theorem report.
#[derive(Clone, Debug, Serialize)]
pub struct IndicatorCheck {
    pub irrep_label: String,
    pub d: usize,
    /// The proportionality scalar √(d_ρ/|G|)·|H| relating Î_H(ρ) to P_ρ^H.
    pub scalar: f64,
    pub max_deviation: f64,
}

/// Report of [`verify_indicator_theorem`].
#[derive(Clone, Debug, Serialize)]
pub struct IndicatorReport {
    pub rows: Vec<IndicatorCheck>,
    pub max_deviation: f64,
}

impl IndicatorReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_deviation <= tolerance
    }
}

/// Checks Î_H(ρ) = scalar · P_ρ^H for every irrep, reporting the scalar
/// √(d_ρ/|G|)·|H| and the largest entrywise deviation per irrep.
pub fn verify_indicator_theorem(h: &Subgroup, set: &IrrepSet) -> IndicatorReport {
    let group = set.group;
    let coeffs = coset_fourier(group.identity(), h, set);
    let order = group.order() as f64;
    let mut rows = Vec::with_capacity(set.irreps.len());
    let mut worst = 0.0f64;
    for (rho, lhs) in set.irreps.iter().zip(coeffs.matrices()) {
        let scalar = (rho.dim() as f64 / order).sqrt() * h.order() as f64;
        let projection = projection_onto_fixed(rho, h);
        let deviation = max_abs_diff(lhs, &projection.mapv(|z| z * scalar));
        worst = worst.max(deviation);
        rows.push(IndicatorCheck {
            irrep_label: rho.label.clone(),
            d: rho.dim(),
            scalar,
            max_deviation: deviation,
        });
    }
    IndicatorReport {
        rows,
        max_deviation: worst,
    }
}

/// Largest entrywise deviation between Î_{sH}(ρ) and ρ(s)·Î_H(ρ) across
/// irreps (the coset corollary).
pub fn coset_corollary_deviation(s: GroupElement, h: &Subgroup, set: &IrrepSet) -> f64 {
    let lhs = coset_fourier(s, h, set);
    let base = coset_fourier(set.group.identity(), h, set);
    set.irreps
        .iter()
        .zip(lhs.matrices().iter().zip(base.matrices()))
        .map(|(rho, (l, b))| max_abs_diff(l, &rho.matrix(s).dot(b)))
        .fold(0.0, f64::max)
}

/// Weak Fourier sampling law of the normalized coset state I_{sH}/√|H|:
/// the probability of observing the matrix-coefficient label (ρ, i, j) is
/// |c_{ρ,i,j}|² = (d_ρ/(|G||H|)) |Σ_{g∈sH} ρ(g)_{ij}|².
#[derive(Clone, Debug)]
pub struct WeakSamplingDistribution {
    labels: Vec<String>,
    blocks: Vec<Array2<f64>>,
}

impl WeakSamplingDistribution {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn blocks(&self) -> &[Array2<f64>] {
        &self.blocks
    }

    pub fn prob(&self, irrep: usize, i: usize, j: usize) -> f64 {
        self.blocks[irrep][(i, j)]
    }

    /// Total mass observed on one irrep block.
    pub fn block_mass(&self, irrep: usize) -> f64 {
        self.blocks[irrep].iter().sum()
    }

    pub fn total_mass(&self) -> f64 {
        (0..self.blocks.len()).map(|i| self.block_mass(i)).sum()
    }
}

/// Expands the normalized coset state in the orthonormal basis of
/// normalized matrix coefficients and returns all squared coefficients.
pub fn weak_sampling_distribution(
    s: GroupElement,
    h: &Subgroup,
    set: &IrrepSet,
) -> WeakSamplingDistribution {
    let group = set.group;
    let order = group.order() as f64;
    let size = h.order() as f64;
    let mut labels = Vec::with_capacity(set.irreps.len());
    let mut blocks = Vec::with_capacity(set.irreps.len());
    for rho in &set.irreps {
        let d = rho.dim();
        let mut sum = Array2::from_elem((d, d), ZERO);
        for &member in h.elements() {
            sum = sum + rho.matrix(group.multiply(s, member));
        }
        let scale = d as f64 / (order * size);
        blocks.push(sum.mapv(|z| scale * z.norm_sqr()));
        labels.push(rho.label.clone());
    }
    WeakSamplingDistribution { labels, blocks }
}

/// Largest entrywise absolute difference between two matrices of equal
/// shape.
pub fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
