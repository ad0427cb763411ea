//! Finite G-CW complexes as data.
//!
//! Two input tiers. A [`GCWComplex`] is a census of cell orbits `G/H × Dⁿ`,
//! which is enough for equivariant Euler characteristics. A [`ChainPackage`]
//! supplies, per conjugacy class `(H)`, a cellular chain complex of the
//! quotient `W_G H \ (X^H, X^{>H})` (or of `W_G H \ X^H`) and optionally a
//! chain self-map, which is what Lefschetz classes and homology ranks need.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::burnside::{BurnsideElement, BurnsideError, BurnsideRing, GhostVector};
use crate::groupkit::{double_cosets, mark, GroupSpec};
use crate::zlinalg::{smith_normal_form, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EqcwError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("chain data missing for class {0}")]
    IncompleteData(String),
    #[error("boundary maps do not square to zero in degree {0}")]
    NotAComplex(usize),
    #[error("map does not commute with the boundary in degree {0}")]
    NotAChainMap(usize),
    #[error("unknown class label {0:?}")]
    UnknownLabel(String),
    #[error("census mismatch at class {class}, degree {degree}: chain data has {found} cells, expected {expected}")]
    CensusMismatch { class: String, degree: usize, expected: usize, found: usize },
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
}

/// One orbit `G/H × Dⁿ` of cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub dim: usize,
    /// Index of the isotropy class in the canonical class order.
    pub isotropy: usize,
}

/// Cell census of a finite G-CW complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GCWComplex {
    pub cells: Vec<Cell>,
    pub label: String,
}

impl GCWComplex {
    pub fn new(cells: Vec<Cell>) -> Self {
        GCWComplex { cells, label: String::new() }
    }

    /// A single orbit `G/H` as a 0-dimensional complex.
    pub fn orbit(isotropy: usize) -> Self {
        Self::new(vec![Cell { dim: 0, isotropy }])
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn disjoint_union(&self, other: &GCWComplex) -> GCWComplex {
        let mut cells = self.cells.clone();
        cells.extend_from_slice(&other.cells);
        GCWComplex::new(cells)
    }

    /// Cells sorted, for comparing censuses up to reordering.
    pub fn sorted_cells(&self) -> Vec<Cell> {
        let mut c = self.cells.clone();
        c.sort();
        c
    }

    pub fn from_record(ring: &BurnsideRing, rec: &ComplexRecord) -> Result<Self, EqcwError> {
        let cells = rec
            .cells
            .iter()
            .map(|c| {
                let isotropy = ring
                    .ccs()
                    .index_of_label(&c.isotropy)
                    .ok_or_else(|| EqcwError::UnknownLabel(c.isotropy.clone()))?;
                Ok(Cell { dim: c.dim, isotropy })
            })
            .collect::<Result<Vec<_>, EqcwError>>()?;
        Ok(GCWComplex { cells, label: rec.label.clone().unwrap_or_default() })
    }

    pub fn to_record(&self, ring: &BurnsideRing, group: GroupSpec) -> ComplexRecord {
        ComplexRecord {
            group,
            cells: self
                .cells
                .iter()
                .map(|c| CellRecord { dim: c.dim, isotropy: ring.ccs().class(c.isotropy).label.clone() })
                .collect(),
            label: (!self.label.is_empty()).then(|| self.label.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub dim: usize,
    pub isotropy: String,
}

/// Serialized cell census.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub group: GroupSpec,
    pub cells: Vec<CellRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn sign(dim: usize) -> BigInt {
    if dim.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `χ^G(X) = Σ_n (−1)ⁿ Σ_{cells of dim n} [G/H_i]`
pub fn euler_class(ring: &BurnsideRing, x: &GCWComplex) -> BurnsideElement {
    let mut out = ring.zero();
    for c in &x.cells {
        out.coeffs[c.isotropy] += sign(c.dim);
    }
    out
}

/// Euler characteristics `χ(X^K)` of the fixed sets, by counting fixed cosets cell by cell.
pub fn fixed_euler_numbers(ring: &BurnsideRing, x: &GCWComplex) -> GhostVector {
    let g = ring.group();
    let ccs = ring.ccs();
    let mut values = vec![BigInt::zero(); ring.len()];
    for c in &x.cells {
        let h = &ccs.class(c.isotropy).representative;
        for (k, v) in values.iter_mut().enumerate() {
            let fixed = mark(g, h, &ccs.class(k).representative);
            *v += sign(c.dim) * BigInt::from(fixed);
        }
    }
    GhostVector { values }
}

/// Product census: `(G/H × Dᵐ) × (G/K × Dⁿ)` splits into orbits
/// `G/(H ∩ gKg⁻¹) × D^{m+n}`, one per double coset `HgK`.
pub fn product_complex(ring: &BurnsideRing, x: &GCWComplex, y: &GCWComplex) -> GCWComplex {
    let g = &**ring.group();
    let ccs = ring.ccs();
    let mut cells = Vec::new();
    for a in &x.cells {
        let h = &ccs.class(a.isotropy).representative;
        for b in &y.cells {
            let k = &ccs.class(b.isotropy).representative;
            for rep in double_cosets(g, h, k) {
                let stab = h.intersection(g, &k.conjugate(g, rep));
                let isotropy = ccs.class_of(&stab).expect("intersection of subgroups");
                cells.push(Cell { dim: a.dim + b.dim, isotropy });
            }
        }
    }
    GCWComplex::new(cells)
}

/// Per class `(H)` and degree, the number of cells of `W_G H \ (X^H, X^{>H})`.
///
/// A cell orbit `G/L` contributes the cosets `gL` with `gLg⁻¹ = H`; the Weyl
/// group acts freely on them.
pub fn relative_census(ring: &BurnsideRing, x: &GCWComplex) -> Vec<Vec<usize>> {
    let g = &**ring.group();
    let ccs = ring.ccs();
    let top = x.dimension().map_or(0, |d| d + 1);
    let mut census = vec![vec![0usize; top]; ring.len()];
    for c in &x.cells {
        let l = &ccs.class(c.isotropy).representative;
        for (hi, row) in census.iter_mut().enumerate() {
            let h = &ccs.class(hi).representative;
            if h.order() != l.order() {
                continue;
            }
            let mut seen = fixedbitset::FixedBitSet::with_capacity(g.order());
            let mut count = 0;
            for x in g.elements() {
                if seen.contains(x) {
                    continue;
                }
                for &y in l.elements() {
                    seen.insert(g.mul(x, y));
                }
                if l.conjugate(g, x) == *h {
                    count += 1;
                }
            }
            row[c.dim] += count / ccs.class(hi).weyl_order;
        }
    }
    census
}

/// Bounded chain complex `C_0 ← C_1 ← …`; `boundaries[k]` is `∂_{k+1}: C_{k+1} → C_k`
/// as a `dims[k] × dims[k+1]` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, EqcwError> {
        let mut dims = dims;
        if dims.is_empty() && !boundaries.is_empty() {
            dims = vec![0; boundaries.len() + 1];
            for (k, b) in boundaries.iter().enumerate() {
                dims[k] = b.rows();
                dims[k + 1] = b.cols();
            }
        }
        if !boundaries.is_empty() && boundaries.len() + 1 > dims.len() {
            return Err(EqcwError::DimensionMismatch(format!(
                "{} boundary maps for {} chain groups",
                boundaries.len(),
                dims.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[k] || b.cols() != dims[k + 1] {
                return Err(EqcwError::DimensionMismatch(format!(
                    "boundary out of degree {} is {}x{}, expected {}x{}",
                    k + 1,
                    b.rows(),
                    b.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        let mut boundaries = boundaries;
        for k in boundaries.len()..dims.len().saturating_sub(1) {
            boundaries.push(IntMatrix::zeros(dims[k], dims[k + 1]));
        }
        for k in 1..boundaries.len() {
            if !(&boundaries[k - 1] * &boundaries[k]).is_zero() {
                return Err(EqcwError::NotAComplex(k + 1));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    /// Complex with the given ranks and zero boundaries.
    pub fn free(dims: Vec<usize>) -> Self {
        ChainComplex::new(dims, Vec::new()).expect("zero boundaries")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `∂_k: C_k → C_{k−1}` for `k ≥ 1`.
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.dims.iter().enumerate().map(|(k, &d)| sign(k) * BigInt::from(d)).sum()
    }

    pub fn identity_map(&self) -> Vec<IntMatrix> {
        self.dims.iter().map(|&d| IntMatrix::identity(d)).collect()
    }

    /// Checks that `maps[k]: C_k → C_k` commute with the boundary.
    pub fn check_chain_map(&self, maps: &[IntMatrix]) -> Result<(), EqcwError> {
        self.check_map_shapes(maps)?;
        for k in 1..self.dims.len() {
            let d = &self.boundaries[k - 1];
            if (d * &maps[k]) != (&maps[k - 1] * d) {
                return Err(EqcwError::NotAChainMap(k));
            }
        }
        Ok(())
    }

    fn check_map_shapes(&self, maps: &[IntMatrix]) -> Result<(), EqcwError> {
        if maps.len() != self.dims.len() {
            return Err(EqcwError::DimensionMismatch(format!(
                "{} map components for a complex of length {}",
                maps.len(),
                self.dims.len()
            )));
        }
        for (k, (m, &d)) in maps.iter().zip(&self.dims).enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(EqcwError::DimensionMismatch(format!(
                    "map in degree {k} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }
}

/// `Σ_n (−1)ⁿ tr(f_n)`
pub fn lefschetz_number(complex: &ChainComplex, maps: &[IntMatrix]) -> Result<BigInt, EqcwError> {
    complex.check_map_shapes(maps)?;
    Ok(maps.iter().enumerate().map(|(k, m)| sign(k) * m.trace()).sum())
}

/// Ranks of rational homology `H_k = dim ker ∂_k − rank ∂_{k+1}`.
pub fn rational_homology_ranks(complex: &ChainComplex) -> Vec<usize> {
    let rank = |m: Option<&IntMatrix>| m.map_or(0, |m| smith_normal_form(m).rank());
    (0..complex.len()).map(|k| complex.dims[k] - rank(complex.boundary(k)) - rank(complex.boundary(k + 1))).collect()
}

/// Chain data for one conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassChainData {
    pub complex: ChainComplex,
    /// Chain self-map; `None` is read as the identity.
    pub map: Option<Vec<IntMatrix>>,
}

impl ClassChainData {
    pub fn lefschetz(&self) -> Result<BigInt, EqcwError> {
        match &self.map {
            Some(m) => lefschetz_number(&self.complex, m),
            None => Ok(self.complex.euler_characteristic()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassChainRecord {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dims: Vec<usize>,
    #[serde(default)]
    pub boundaries: Vec<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<IntMatrix>>,
}

/// Chain data keyed by class label, as read from JSON.
pub type ChainPackageRecord = BTreeMap<String, ClassChainRecord>;

/// Validated chain data for every class that was supplied.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainPackage {
    pub classes: BTreeMap<usize, ClassChainData>,
}

impl ChainPackage {
    /// Validates labels, `∂∂ = 0` and the chain-map condition.
    pub fn from_record(ring: &BurnsideRing, rec: &ChainPackageRecord) -> Result<Self, EqcwError> {
        let mut classes = BTreeMap::new();
        for (label, r) in rec {
            let i = ring.ccs().index_of_label(label).ok_or_else(|| EqcwError::UnknownLabel(label.clone()))?;
            let complex = ChainComplex::new(r.dims.clone(), r.boundaries.clone())?;
            if let Some(m) = &r.map {
                complex.check_chain_map(m)?;
            }
            classes.insert(i, ClassChainData { complex, map: r.map.clone() });
        }
        Ok(ChainPackage { classes })
    }

    pub fn to_record(&self, ring: &BurnsideRing) -> ChainPackageRecord {
        self.classes
            .iter()
            .map(|(&i, d)| {
                (
                    ring.ccs().class(i).label.clone(),
                    ClassChainRecord {
                        dims: d.complex.dims.clone(),
                        boundaries: d.complex.boundaries.clone(),
                        map: d.map.clone(),
                    },
                )
            })
            .collect()
    }

    pub fn insert(
        &mut self,
        class: usize,
        complex: ChainComplex,
        map: Option<Vec<IntMatrix>>,
    ) -> Result<(), EqcwError> {
        if let Some(m) = &map {
            complex.check_chain_map(m)?;
        }
        self.classes.insert(class, ClassChainData { complex, map });
        Ok(())
    }

    fn require(&self, ring: &BurnsideRing, i: usize) -> Result<&ClassChainData, EqcwError> {
        self.classes.get(&i).ok_or_else(|| EqcwError::IncompleteData(ring.ccs().class(i).label.clone()))
    }

    /// Identity maps on complexes with zero boundaries matching a relative census.
    pub fn identity_from_census(ring: &BurnsideRing, x: &GCWComplex) -> Self {
        let census = relative_census(ring, x);
        let classes = census
            .into_iter()
            .enumerate()
            .map(|(i, mut dims)| {
                while dims.len() > 1 && dims.last() == Some(&0) {
                    dims.pop();
                }
                (i, ClassChainData { complex: ChainComplex::free(dims), map: None })
            })
            .collect();
        ChainPackage { classes }
    }

    /// Checks the supplied cell counts against the relative census of `x`.
    pub fn check_census(&self, ring: &BurnsideRing, x: &GCWComplex) -> Result<(), EqcwError> {
        let census = relative_census(ring, x);
        for (i, expected) in census.iter().enumerate() {
            let data = self.require(ring, i)?;
            let found = data.complex.dims();
            for k in 0..expected.len().max(found.len()) {
                let e = expected.get(k).copied().unwrap_or(0);
                let f = found.get(k).copied().unwrap_or(0);
                if e != f {
                    return Err(EqcwError::CensusMismatch {
                        class: ring.ccs().class(i).label.clone(),
                        degree: k,
                        expected: e,
                        found: f,
                    });
                }
            }
        }
        Ok(())
    }
}

/// `Λ^G(f) = Σ_(H) Λ(W_G H \ (f^H, f^{>H})) · [G/H]`
pub fn lefschetz_class(ring: &BurnsideRing, pkg: &ChainPackage) -> Result<BurnsideElement, EqcwError> {
    let mut out = ring.zero();
    for i in 0..ring.len() {
        out.coeffs[i] = pkg.require(ring, i)?.lefschetz()?;
    }
    Ok(out)
}

/// A chain map between two possibly different complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMorphism {
    pub source: ChainComplex,
    pub target: ChainComplex,
    /// `maps[k]: C_k(source) → C_k(target)`
    pub maps: Vec<IntMatrix>,
}

impl ChainMorphism {
    pub fn new(source: ChainComplex, target: ChainComplex, maps: Vec<IntMatrix>) -> Result<Self, EqcwError> {
        if source.len() != target.len() || maps.len() != source.len() {
            return Err(EqcwError::DimensionMismatch("chain morphism lengths differ".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != target.dims[k] || m.cols() != source.dims[k] {
                return Err(EqcwError::DimensionMismatch(format!("component in degree {k} has the wrong shape")));
            }
        }
        for k in 1..source.len() {
            let lhs = &target.boundaries[k - 1] * &maps[k];
            let rhs = &maps[k - 1] * &source.boundaries[k - 1];
            if lhs != rhs {
                return Err(EqcwError::NotAChainMap(k));
            }
        }
        Ok(ChainMorphism { source, target, maps })
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ChainMorphism) -> Result<ChainMorphism, EqcwError> {
        if other.target != self.source {
            return Err(EqcwError::DimensionMismatch("maps are not composable".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a * b).collect();
        Ok(ChainMorphism { source: other.source.clone(), target: self.target.clone(), maps })
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }
}

/// Compares `Λ^G(f ∘ g)` with `Λ^G(g ∘ f)` for per-class maps `f: X → Y`, `g: Y → X`.
pub fn lefschetz_trace_property(
    ring: &BurnsideRing,
    f_data: &[ChainMorphism],
    g_data: &[ChainMorphism],
) -> Result<bool, EqcwError> {
    if f_data.len() != ring.len() || g_data.len() != ring.len() {
        return Err(EqcwError::DimensionMismatch("one chain morphism per class is required".into()));
    }
    let mut fg = ring.zero();
    let mut gf = ring.zero();
    for i in 0..ring.len() {
        let a = f_data[i].compose(&g_data[i])?;
        let b = g_data[i].compose(&f_data[i])?;
        fg.coeffs[i] = lefschetz_number(&a.source, &a.maps)?;
        gf.coeffs[i] = lefschetz_number(&b.source, &b.maps)?;
    }
    Ok(fg == gf)
}

/// `(Λ^G(f) − 1) · (χ^G(X) − 1)` with `1 = [G/G]`, evaluated as written.
pub fn degree_class(ring: &BurnsideRing, pkg: &ChainPackage, x: &GCWComplex) -> Result<BurnsideElement, EqcwError> {
    let one = ring.one();
    let lambda = &lefschetz_class(ring, pkg)? - &one;
    let chi = &euler_class(ring, x) - &one;
    Ok(ring.multiply(&lambda, &chi))
}

/// Rank of `π^n_G(X) ⊗ ℚ` as `Σ_(H) rank H^n(W_G H \ X^H; ℚ)`, from absolute
/// chain data for every class.
pub fn rational_cohomotopy_rank(ring: &BurnsideRing, pkg: &ChainPackage, n: usize) -> Result<usize, EqcwError> {
    let mut total = 0;
    for i in 0..ring.len() {
        let ranks = rational_homology_ranks(&pkg.require(ring, i)?.complex);
        total += ranks.get(n).copied().unwrap_or(0);
    }
    Ok(total)
}

/// Absolute chain data of the one-point space: every fixed-set quotient is a point.
pub fn point_package(ring: &BurnsideRing) -> ChainPackage {
    let classes =
        (0..ring.len()).map(|i| (i, ClassChainData { complex: ChainComplex::free(vec![1]), map: None })).collect();
    ChainPackage { classes }
}

/// What is known about `π^n_G(G/H) = π^n_H` in each degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CohomotopyCoefficient {
    /// A finite group (`n ≤ −1`); rationally trivial.
    Finite,
    /// The Burnside ring `A(H)`, free of the given rank (`n = 0`).
    BurnsideRing { rank: usize },
    /// The zero group (`n ≥ 1`).
    Zero,
}

impl CohomotopyCoefficient {
    pub fn rational_rank(&self) -> usize {
        match self {
            CohomotopyCoefficient::BurnsideRing { rank } => *rank,
            _ => 0,
        }
    }
}

/// Coefficient `π^n_G(G/H)` for the class `h` of `ring`.
pub fn cohomotopy_coefficient(ring: &BurnsideRing, h: usize, n: i64) -> CohomotopyCoefficient {
    match n {
        n if n < 0 => CohomotopyCoefficient::Finite,
        0 => {
            let (sub, _) = ring.subgroup_ring(&ring.ccs().class(h).representative);
            CohomotopyCoefficient::BurnsideRing { rank: sub.len() }
        }
        _ => CohomotopyCoefficient::Zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::named_group;

    fn ring(name: &str) -> BurnsideRing {
        BurnsideRing::of(named_group(name, 400).unwrap())
    }

    /// ℤ/2 acting on S¹ by reflection: two fixed 0-cells and one free 1-cell orbit.
    fn reflected_circle() -> GCWComplex {
        GCWComplex::new(vec![Cell { dim: 0, isotropy: 1 }, Cell { dim: 0, isotropy: 1 }, Cell { dim: 1, isotropy: 0 }])
    }

    #[test]
    fn euler_classes() {
        let r = ring("C2");
        let x = reflected_circle();
        assert_eq!(euler_class(&r, &x), BurnsideElement::from_i64(&[-1, 2]));
        assert_eq!(fixed_euler_numbers(&r, &x), GhostVector::from_i64(&[0, 2]));
        assert_eq!(euler_class(&r, &GCWComplex::default()), r.zero());
        assert_eq!(fixed_euler_numbers(&r, &GCWComplex::orbit(1)), GhostVector::from_i64(&[1, 1]));
    }

    #[test]
    fn products_of_censuses() {
        let r = ring("C2");
        let free = GCWComplex::orbit(0);
        let p = product_complex(&r, &free, &free);
        assert_eq!(p.sorted_cells(), vec![Cell { dim: 0, isotropy: 0 }; 2]);
        let x = reflected_circle();
        assert_eq!(product_complex(&r, &x, &GCWComplex::orbit(1)).sorted_cells(), x.sorted_cells());
    }

    #[test]
    fn lefschetz_numbers() {
        let c = ChainComplex::free(vec![2]);
        let swap = vec![IntMatrix::from_i64(&[&[0, 1], &[1, 0]])];
        assert_eq!(lefschetz_number(&c, &swap).unwrap(), BigInt::zero());
        assert_eq!(lefschetz_number(&c, &c.identity_map()).unwrap(), BigInt::from(2));
        let bad = vec![IntMatrix::identity(3)];
        assert!(matches!(lefschetz_number(&c, &bad), Err(EqcwError::DimensionMismatch(_))));
    }

    #[test]
    fn reflected_circle_lefschetz() {
        let r = ring("C2");
        let x = reflected_circle();
        let mut pkg = ChainPackage::identity_from_census(&r, &x);
        assert_eq!(lefschetz_class(&r, &pkg).unwrap(), euler_class(&r, &x));
        pkg.check_census(&r, &x).unwrap();
        let fixed = pkg.classes[&1].complex.clone();
        pkg.insert(1, fixed, Some(vec![IntMatrix::from_i64(&[&[0, 1], &[1, 0]])])).unwrap();
        assert_eq!(lefschetz_class(&r, &pkg).unwrap().coeffs[1], BigInt::zero());
        pkg.classes.remove(&0);
        assert_eq!(lefschetz_class(&r, &pkg), Err(EqcwError::IncompleteData("1:0".into())));
    }

    #[test]
    fn chain_validation() {
        let d1 = IntMatrix::from_i64(&[&[1], &[1]]);
        let d2 = IntMatrix::from_i64(&[&[1]]);
        assert!(matches!(ChainComplex::new(vec![2, 1, 1], vec![d1.clone(), d2]), Err(EqcwError::NotAComplex(2))));
        let c = ChainComplex::new(vec![], vec![IntMatrix::from_i64(&[&[1, -1]]).transpose()]).unwrap();
        assert_eq!(c.dims(), &[2, 1]);
        let not_chain = vec![IntMatrix::from_i64(&[&[1, 0], &[0, 0]]), IntMatrix::identity(1)];
        assert_eq!(c.check_chain_map(&not_chain), Err(EqcwError::NotAChainMap(1)));
    }

    #[test]
    fn homology_ranks() {
        assert_eq!(rational_homology_ranks(&ChainComplex::free(vec![1])), vec![1]);
        assert_eq!(rational_homology_ranks(&ChainComplex::free(vec![1, 1])), vec![1, 1]);
        // interval: two vertices, one edge
        let interval = ChainComplex::new(vec![2, 1], vec![IntMatrix::from_i64(&[&[-1], &[1]])]).unwrap();
        assert_eq!(rational_homology_ranks(&interval), vec![1, 0]);
    }

    #[test]
    fn point_cohomotopy_rank() {
        let r = ring("C2");
        assert_eq!(rational_cohomotopy_rank(&r, &point_package(&r), 0).unwrap(), 2);
        assert_eq!(rational_cohomotopy_rank(&r, &point_package(&r), 1).unwrap(), 0);
        assert_eq!(cohomotopy_coefficient(&r, 1, 0), CohomotopyCoefficient::BurnsideRing { rank: 2 });
        assert_eq!(cohomotopy_coefficient(&r, 1, -3), CohomotopyCoefficient::Finite);
        assert_eq!(cohomotopy_coefficient(&r, 0, 2), CohomotopyCoefficient::Zero);
    }

    #[test]
    fn degree_class_as_written() {
        let r = ring("C2");
        let x = reflected_circle();
        let pkg = ChainPackage::identity_from_census(&r, &x);
        let chi_minus_one = &euler_class(&r, &x) - &r.one();
        assert_eq!(degree_class(&r, &pkg, &x).unwrap(), r.multiply(&chi_minus_one, &chi_minus_one));
    }
}
