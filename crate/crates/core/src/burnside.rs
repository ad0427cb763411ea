//! The Burnside ring `A(G)` of a finite group.
//!
//! Elements are integer vectors over the basis `[G/H]`, one coordinate per
//! conjugacy class of subgroups in canonical order. The ghost (character)
//! map sends `[G/H]` to its row of the table of marks. Products are computed
//! in ghost coordinates and pulled back by triangular solving.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::groupkit::{
    cyclic_subgroup_data, double_cosets, subgroup_as_group, CcsTable, FiniteGroup, GroupError, GroupHom, Subgroup,
};
use crate::zlinalg::{self, int_vec, IntMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BurnsideError {
    #[error("not in the ghost image: coordinate at class {class} would be {numerator}/{denominator}")]
    NotInImage { class: String, index: usize, numerator: BigInt, denominator: BigInt },
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("expected a vector of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("unknown class label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// An element of `A(G)` in the basis `[G/H]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    pub coeffs: Vec<BigInt>,
}

/// A vector in the ghost ring `∏_(H) ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GhostVector {
    pub values: Vec<BigInt>,
}

macro_rules! vector_ops {
    ($t:ident, $field:ident) => {
        impl $t {
            pub fn zero(n: usize) -> Self {
                $t { $field: vec![BigInt::zero(); n] }
            }

            pub fn from_i64(v: &[i64]) -> Self {
                $t { $field: v.iter().map(|&x| BigInt::from(x)).collect() }
            }

            pub fn len(&self) -> usize {
                self.$field.len()
            }

            pub fn is_empty(&self) -> bool {
                self.$field.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.$field.iter().all(Zero::is_zero)
            }

            pub fn scale(&self, k: &BigInt) -> Self {
                $t { $field: self.$field.iter().map(|x| x * k).collect() }
            }
        }

        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                assert_eq!(self.len(), rhs.len(), "length mismatch");
                $t { $field: self.$field.iter().zip(&rhs.$field).map(|(a, b)| a + b).collect() }
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                assert_eq!(self.len(), rhs.len(), "length mismatch");
                $t { $field: self.$field.iter().zip(&rhs.$field).map(|(a, b)| a - b).collect() }
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t { $field: self.$field.iter().map(|a| -a).collect() }
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.$field.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    };
}

vector_ops!(BurnsideElement, coeffs);
vector_ops!(GhostVector, values);

impl BurnsideElement {
    pub fn basis(n: usize, i: usize) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[i] = BigInt::one();
        x
    }
}

impl Mul for &GhostVector {
    type Output = GhostVector;
    fn mul(self, rhs: &GhostVector) -> GhostVector {
        assert_eq!(self.len(), rhs.len(), "length mismatch");
        GhostVector { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a * b).collect() }
    }
}

/// Marks `|(G/H)^K|` with rows `H` and columns `K` in canonical class order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOfMarks {
    pub group: String,
    pub labels: Vec<String>,
    pub matrix: IntMatrix,
}

impl TableOfMarks {
    pub fn get(&self, h: usize, k: usize) -> &BigInt {
        self.matrix.get(h, k)
    }

    /// Lower-triangular text layout with class labels.
    pub fn to_text(&self) -> String {
        let n = self.labels.len();
        let cells: Vec<String> = self.matrix.entries().iter().map(ToString::to_string).collect();
        let width = cells.iter().chain(&self.labels).map(String::len).max().unwrap_or(1);
        let mut out = format!("{:>width$} |", "");
        for l in &self.labels {
            out += &format!(" {l:>width$}");
        }
        out.push('\n');
        out += &"-".repeat((width + 1) * (n + 1) + 1);
        out.push('\n');
        for h in 0..n {
            out += &format!("{:>width$} |", self.labels[h]);
            for k in 0..=h {
                out += &format!(" {:>width$}", cells[h * n + k]);
            }
            out.push('\n');
        }
        out
    }
}

/// One term `coefficient · v(class)` of a congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceTerm {
    pub coefficient: BigInt,
    pub class: usize,
}

/// Residue of the congruence attached to one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceResidue {
    pub class: String,
    #[serde(serialize_with = "ser_int")]
    pub modulus: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub residue: BigInt,
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    int_vec::to_json(v).serialize(s)
}

type SubgroupRingCache = Mutex<HashMap<Vec<usize>, (Arc<BurnsideRing>, GroupHom)>>;

/// The Burnside ring of a finite group with its table of marks and congruences.
pub struct BurnsideRing {
    group: Arc<FiniteGroup>,
    ccs: CcsTable,
    marks: TableOfMarks,
    congruences: Vec<Vec<CongruenceTerm>>,
    /// Machine-word copies of marks and congruence coefficients for the
    /// small-value fast paths.
    small_marks: Vec<i64>,
    small_congruences: Vec<Vec<(i64, usize)>>,
    subgroup_rings: SubgroupRingCache,
}

impl fmt::Debug for BurnsideRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BurnsideRing({}, rank {})", self.group.label(), self.len())
    }
}

/// Table of marks of a group.
pub fn mark_table(g: &Arc<FiniteGroup>) -> TableOfMarks {
    BurnsideRing::new(g).marks
}

impl BurnsideRing {
    pub fn new(g: &Arc<FiniteGroup>) -> Self {
        let ccs = CcsTable::new(g);
        let marks = compute_marks(&ccs);
        let congruences: Vec<Vec<CongruenceTerm>> = (0..ccs.len()).map(|i| congruence_terms(&ccs, i)).collect();
        let word = |x: &BigInt| x.to_i64().expect("bounded by the group order");
        let small_marks = marks.matrix.entries().iter().map(word).collect();
        let small_congruences =
            congruences.iter().map(|ts| ts.iter().map(|t| (word(&t.coefficient), t.class)).collect()).collect();
        BurnsideRing {
            group: Arc::clone(g),
            ccs,
            marks,
            congruences,
            small_marks,
            small_congruences,
            subgroup_rings: Mutex::new(HashMap::new()),
        }
    }

    pub fn of(g: FiniteGroup) -> Self {
        Self::new(&Arc::new(g))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ccs(&self) -> &CcsTable {
        &self.ccs
    }

    pub fn marks(&self) -> &TableOfMarks {
        &self.marks
    }

    /// Rank of `A(G)`, the number of conjugacy classes of subgroups.
    pub fn len(&self) -> usize {
        self.ccs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ccs.is_empty()
    }

    pub fn weyl_order(&self, i: usize) -> usize {
        self.ccs.class(i).weyl_order
    }

    pub fn congruence_terms(&self, i: usize) -> &[CongruenceTerm] {
        &self.congruences[i]
    }

    pub fn label_index(&self, label: &str) -> Result<usize, BurnsideError> {
        self.ccs.index_of_label(label).ok_or_else(|| BurnsideError::UnknownLabel(label.into()))
    }

    pub fn zero(&self) -> BurnsideElement {
        BurnsideElement::zero(self.len())
    }

    /// `[G/G]`
    pub fn one(&self) -> BurnsideElement {
        self.basis(self.ccs.top_class())
    }

    /// `[G/H]` for the class with index `i`.
    pub fn basis(&self, i: usize) -> BurnsideElement {
        BurnsideElement::basis(self.len(), i)
    }

    fn check_len(&self, got: usize) -> Result<(), BurnsideError> {
        if got == self.len() {
            Ok(())
        } else {
            Err(BurnsideError::WrongLength { expected: self.len(), got })
        }
    }

    pub fn char(&self, x: &BurnsideElement) -> GhostVector {
        assert_eq!(x.len(), self.len(), "element of a different Burnside ring");
        let m = &self.marks.matrix;
        let values = m.left_apply(&x.coeffs).expect("checked length");
        GhostVector { values }
    }

    /// Coefficient at class `i` in the top-down triangular solve, given the
    /// coefficients of all classes `j > i`. On failure returns the reduced
    /// fraction the coefficient would have to be.
    pub fn solve_coefficient_at(
        &self,
        i: usize,
        value: &BigInt,
        coeffs: &[BigInt],
    ) -> Result<BigInt, (BigInt, BigInt)> {
        if let Some(r) = self.solve_small(i, value, coeffs) {
            return r;
        }
        let m = &self.marks.matrix;
        let mut rest = value.clone();
        for (j, c) in coeffs.iter().enumerate().skip(i + 1) {
            if !c.is_zero() {
                let e = m.get(j, i);
                if !e.is_zero() {
                    rest -= c * e;
                }
            }
        }
        let pivot = m.get(i, i);
        let (q, r) = rest.div_rem(pivot);
        if r.is_zero() {
            Ok(q)
        } else {
            let g = rest.gcd(pivot);
            Err((rest / &g, pivot / g))
        }
    }

    fn solve_small(&self, i: usize, value: &BigInt, coeffs: &[BigInt]) -> Option<Result<BigInt, (BigInt, BigInt)>> {
        let n = self.len();
        let mut rest = i128::from(value.to_i64()?);
        for (j, c) in coeffs.iter().enumerate().skip(i + 1) {
            let e = self.small_marks[j * n + i];
            if e != 0 && !c.is_zero() {
                rest = rest.checked_sub(i128::from(c.to_i64()?).checked_mul(i128::from(e))?)?;
            }
        }
        let pivot = i128::from(self.small_marks[i * n + i]);
        if rest % pivot == 0 {
            Some(Ok(BigInt::from(rest / pivot)))
        } else {
            let g = rest.gcd(&pivot);
            Some(Err((BigInt::from(rest / g), BigInt::from(pivot / g))))
        }
    }

    pub fn uncharacter(&self, v: &GhostVector) -> Result<BurnsideElement, BurnsideError> {
        self.check_len(v.len())?;
        let n = self.len();
        let mut coeffs = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            match self.solve_coefficient_at(i, &v.values[i], &coeffs) {
                Ok(c) => coeffs[i] = c,
                Err((numerator, denominator)) => {
                    return Err(BurnsideError::NotInImage {
                        class: self.ccs.class(i).label.clone(),
                        index: i,
                        numerator,
                        denominator,
                    })
                }
            }
        }
        Ok(BurnsideElement { coeffs })
    }

    /// Residue in `[0, |W_G H|)` of the congruence at class `i`. Only reads
    /// coordinates of classes `j ≥ i`.
    pub fn congruence_residue_at(&self, i: usize, values: &[BigInt]) -> BigInt {
        let w = self.weyl_order(i) as i128;
        let small = self.small_congruences[i].iter().try_fold(0i128, |acc, &(c, k)| {
            acc.checked_add(i128::from(c).checked_mul(i128::from(values[k].to_i64()?))?)
        });
        if let Some(sum) = small {
            return BigInt::from(sum.rem_euclid(w));
        }
        let modulus = BigInt::from(self.weyl_order(i));
        let sum: BigInt = self.congruences[i].iter().map(|t| &t.coefficient * &values[t.class]).sum();
        sum.mod_floor(&modulus)
    }

    pub fn congruence_residues(&self, v: &GhostVector) -> Vec<CongruenceResidue> {
        assert_eq!(v.len(), self.len(), "ghost vector of a different Burnside ring");
        (0..self.len())
            .map(|i| CongruenceResidue {
                class: self.ccs.class(i).label.clone(),
                modulus: BigInt::from(self.weyl_order(i)),
                residue: self.congruence_residue_at(i, &v.values),
            })
            .collect()
    }

    pub fn is_in_ghost_image(&self, v: &GhostVector) -> bool {
        v.len() == self.len() && (0..self.len()).all(|i| self.congruence_residue_at(i, &v.values).is_zero())
    }

    pub fn multiply(&self, x: &BurnsideElement, y: &BurnsideElement) -> BurnsideElement {
        let prod = &self.char(x) * &self.char(y);
        self.uncharacter(&prod).expect("ghost image is closed under products")
    }

    /// Cardinality of the underlying set.
    pub fn augmentation(&self, x: &BurnsideElement) -> BigInt {
        self.char(x).values[self.ccs.trivial_class()].clone()
    }

    fn same_group(&self, other: &Arc<FiniteGroup>) -> bool {
        Arc::ptr_eq(&self.group, other) || *self.group == **other
    }

    /// Induction along an injective homomorphism `source.group() → self.group()`.
    pub fn induction(
        &self,
        incl: &GroupHom,
        source: &BurnsideRing,
        x: &BurnsideElement,
    ) -> Result<BurnsideElement, BurnsideError> {
        if !incl.is_injective() {
            return Err(BurnsideError::NotInjective);
        }
        if !self.same_group(incl.target()) || !source.same_group(incl.source()) {
            return Err(BurnsideError::GroupMismatch("homomorphism does not match the rings".into()));
        }
        source.check_len(x.len())?;
        let mut out = self.zero();
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let image = incl.image_of(&source.ccs.class(i).representative);
            let j = self.ccs.class_of(&image).expect("image of a subgroup is a subgroup");
            out.coeffs[j] += c;
        }
        Ok(out)
    }

    /// Restriction along an injective homomorphism `target.group() → self.group()`.
    pub fn restriction(
        &self,
        incl: &GroupHom,
        target: &BurnsideRing,
        x: &BurnsideElement,
    ) -> Result<BurnsideElement, BurnsideError> {
        if !incl.is_injective() {
            return Err(BurnsideError::NotInjective);
        }
        self.restrict_along(incl, target, x)
    }

    /// Pullback of G-sets along an arbitrary homomorphism `hom: S → G`.
    ///
    /// `S` acts on `G/K` through `hom`; its orbits are the double cosets
    /// `im(hom) g K` and the stabilizer of `gK` is `hom⁻¹(gKg⁻¹)`.
    pub fn restrict_along(
        &self,
        hom: &GroupHom,
        target: &BurnsideRing,
        x: &BurnsideElement,
    ) -> Result<BurnsideElement, BurnsideError> {
        if !self.same_group(hom.target()) || !target.same_group(hom.source()) {
            return Err(BurnsideError::GroupMismatch("homomorphism does not match the rings".into()));
        }
        self.check_len(x.len())?;
        let g = &*self.group;
        let image = hom.image_of(&Subgroup::whole(hom.source()));
        let mut out = target.zero();
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = &self.ccs.class(i).representative;
            for rep in double_cosets(g, &image, k) {
                let stab = hom.preimage_of(&k.conjugate(g, rep));
                let j = target.ccs.class_of(&stab).expect("preimage of a subgroup is a subgroup");
                out.coeffs[j] += c;
            }
        }
        Ok(out)
    }

    /// Burnside ring of a subgroup, with its inclusion; built once and cached.
    pub fn subgroup_ring(&self, h: &Subgroup) -> (Arc<BurnsideRing>, GroupHom) {
        let mut cache = self.subgroup_rings.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(hit) = cache.get(h.elements()) {
            return hit.clone();
        }
        drop(cache);
        let (sub, incl) = subgroup_as_group(&self.group, h);
        let ring = Arc::new(BurnsideRing::new(&sub));
        cache = self.subgroup_rings.lock().unwrap_or_else(|e| e.into_inner());
        cache.entry(h.elements().to_vec()).or_insert((ring, incl)).clone()
    }

    /// `ind_H^G` for a subgroup given inside G.
    pub fn induce_from(&self, h: &Subgroup, x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        let (ring, incl) = self.subgroup_ring(h);
        self.induction(&incl, &ring, x)
    }

    /// `res_H^G` for a subgroup given inside G.
    pub fn restrict_to(&self, h: &Subgroup, x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        let (ring, incl) = self.subgroup_ring(h);
        self.restriction(&incl, &ring, x)
    }

    /// Compares `res_K ind_H (x)` with the double-coset sum
    /// `Σ_{KgH} ind_{c(g): H∩g⁻¹Kg → K} res_{H∩g⁻¹Kg}(x)`.
    pub fn verify_mackey(&self, h: &Subgroup, k: &Subgroup, x: &BurnsideElement) -> Result<bool, BurnsideError> {
        let g = &*self.group;
        let (ring_h, _) = self.subgroup_ring(h);
        let (ring_k, _) = self.subgroup_ring(k);
        let lhs = self.restrict_to(k, &self.induce_from(h, x)?)?;

        let mut rhs = ring_k.zero();
        for rep in double_cosets(g, k, h) {
            let rep_inv = g.inv(rep);
            // L = H ∩ g⁻¹Kg as a subgroup of the group of H
            let meet = h.intersection(g, &k.conjugate(g, rep_inv));
            let meet_in_h = local_subgroup(ring_h.group(), h, &meet);
            let (ring_l, incl_l) = ring_h.subgroup_ring(&meet_in_h);
            let restricted = ring_h.restriction(&incl_l, &ring_l, x)?;
            // c(g): l ↦ g l g⁻¹, landing in K
            let images: Vec<usize> = meet
                .elements()
                .iter()
                .map(|&l| k.elements().binary_search(&g.conj(rep, l)).expect("conjugate lies in K"))
                .collect();
            let conj = GroupHom::new(Arc::clone(ring_l.group()), Arc::clone(ring_k.group()), images)?;
            rhs = &rhs + &ring_k.induction(&conj, &ring_l, &restricted)?;
        }
        Ok(lhs == rhs)
    }

    /// Checks `Σ n_i ind_{H_i} res_{H_i}(y) = x · y` for `x = Σ n_i [G/H_i]`.
    pub fn green_action_identity(&self, x: &BurnsideElement, y: &BurnsideElement) -> Result<bool, BurnsideError> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let mut lhs = self.zero();
        for (i, n) in x.coeffs.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let h = &self.ccs.class(i).representative;
            let term = self.induce_from(h, &self.restrict_to(h, y)?)?;
            lhs = &lhs + &term.scale(n);
        }
        Ok(lhs == self.multiply(x, y))
    }

    /// `{[G/H] − [G:H]·[G/G]}` over the classes of proper subgroups.
    pub fn augmentation_ideal_basis(&self) -> Vec<BurnsideElement> {
        let top = self.ccs.top_class();
        let order = self.group.order();
        (0..top)
            .map(|i| {
                let mut b = self.basis(i);
                b.coeffs[top] = -BigInt::from(order / self.ccs.class(i).order());
                b
            })
            .collect()
    }

    /// Hermite basis of the lattice `I^n`, rows indexed like the ring basis.
    pub fn ideal_power_basis(&self, n: usize) -> IntMatrix {
        let base = self.augmentation_ideal_basis();
        let to_matrix = |rows: &[BurnsideElement]| {
            let rows = rows.iter().map(|r| r.coeffs.clone()).collect();
            IntMatrix::from_rows(rows, self.len()).expect("uniform rows")
        };
        let mut current = zlinalg::hermite_basis(&to_matrix(&base));
        for _ in 1..n.max(1) {
            let mut products = Vec::new();
            for row in current.row_iter() {
                let x = BurnsideElement { coeffs: row.to_vec() };
                for b in &base {
                    products.push(self.multiply(&x, b));
                }
            }
            current = zlinalg::hermite_basis(&to_matrix(&products));
        }
        current
    }

    /// Invariant factors of `A(G) / I^n`, ascending with free summands (0) last.
    pub fn completion_quotient(&self, n: usize) -> Vec<BigInt> {
        let ambient = IntMatrix::identity(self.len());
        zlinalg::quotient_invariants(&ambient, &self.ideal_power_basis(n)).expect("I^n lies in A(G)")
    }

    pub fn to_record(&self, x: &BurnsideElement) -> ElementRecord {
        ElementRecord { group: self.group.label().to_string(), coeffs: x.coeffs.clone(), basis: self.ccs.labels() }
    }

    /// Reads an element, reordering by basis labels when present.
    pub fn from_record(&self, r: &ElementRecord) -> Result<BurnsideElement, BurnsideError> {
        if r.basis.is_empty() {
            self.check_len(r.coeffs.len())?;
            return Ok(BurnsideElement { coeffs: r.coeffs.clone() });
        }
        if r.basis.len() != r.coeffs.len() {
            return Err(BurnsideError::WrongLength { expected: r.basis.len(), got: r.coeffs.len() });
        }
        let mut x = self.zero();
        for (label, c) in r.basis.iter().zip(&r.coeffs) {
            x.coeffs[self.label_index(label)?] += c;
        }
        Ok(x)
    }

    /// Human-readable form such as `2[G/1:0] - [G/6:0]`.
    pub fn format_element(&self, x: &BurnsideElement) -> String {
        let mut out = String::new();
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = &self.ccs.class(i).label;
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out += &format!(" {sign} ");
            }
            if !mag.is_one() {
                out += &mag.to_string();
            }
            out += &format!("[G/{label}]");
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Serialized Burnside element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    #[serde(default)]
    pub group: String,
    #[serde(with = "int_vec")]
    pub coeffs: Vec<BigInt>,
    #[serde(default)]
    pub basis: Vec<String>,
}

/// A subgroup `l ⊆ h ⊆ G` re-expressed in the numbering of `h` as a group.
fn local_subgroup(h_group: &FiniteGroup, h: &Subgroup, l: &Subgroup) -> Subgroup {
    let positions: Vec<usize> = l.elements().iter().map(|x| h.elements().binary_search(x).expect("l ⊆ h")).collect();
    Subgroup::from_elements(h_group, &positions).expect("intersection of subgroups")
}

/// Marks through conjugate counting: `|(G/H)^K| = #{H' ~ H : K ⊆ H'} · |W_G H|`.
fn compute_marks(ccs: &CcsTable) -> TableOfMarks {
    let n = ccs.len();
    let mut m = IntMatrix::zeros(n, n);
    for h in 0..n {
        let class = ccs.class(h);
        for k in 0..=h {
            let rep = &ccs.class(k).representative;
            let count = class.conjugates.iter().filter(|c| rep.is_subset(c)).count();
            m.set(h, k, BigInt::from(count * class.weyl_order));
        }
    }
    TableOfMarks { group: ccs.group().label().to_string(), labels: ccs.labels(), matrix: m }
}

/// Terms `|Gen C| · [W : N_W C] · v(p⁻¹(C))` over cyclic classes C of `W_G H`.
fn congruence_terms(ccs: &CcsTable, i: usize) -> Vec<CongruenceTerm> {
    let class = ccs.class(i);
    let g = ccs.group();
    let mut terms: Vec<CongruenceTerm> = Vec::new();
    for data in cyclic_subgroup_data(&class.weyl_group) {
        let pre = class.weyl_preimage(g, &data.subgroup);
        let j = ccs.class_of(&pre).expect("preimage of a Weyl subgroup is a subgroup of G");
        let coefficient = BigInt::from(data.generator_count * data.index_of_normalizer);
        match terms.iter_mut().find(|t| t.class == j) {
            Some(t) => t.coefficient += coefficient,
            None => terms.push(CongruenceTerm { coefficient, class: j }),
        }
    }
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{mark, named_group};

    fn ring(name: &str) -> BurnsideRing {
        BurnsideRing::of(named_group(name, 400).unwrap())
    }

    fn el(v: &[i64]) -> BurnsideElement {
        BurnsideElement::from_i64(v)
    }

    #[test]
    fn mark_tables() {
        assert_eq!(ring("C2").marks().matrix, IntMatrix::from_i64(&[&[2, 0], &[1, 1]]));
        assert_eq!(
            ring("S3").marks().matrix,
            IntMatrix::from_i64(&[&[6, 0, 0, 0], &[3, 1, 0, 0], &[2, 0, 2, 0], &[1, 1, 1, 1]])
        );
        assert_eq!(ring("trivial").marks().matrix, IntMatrix::from_i64(&[&[1]]));
    }

    #[test]
    fn marks_agree_with_coset_counting() {
        for name in ["S4", "D6", "Q8", "A4", "C2xC4"] {
            let r = ring(name);
            let g = r.group();
            for h in 0..r.len() {
                for k in 0..r.len() {
                    let direct = mark(g, &r.ccs().class(h).representative, &r.ccs().class(k).representative);
                    assert_eq!(r.marks().get(h, k), &BigInt::from(direct), "{name} ({h},{k})");
                }
            }
        }
    }

    #[test]
    fn character_examples() {
        let r = ring("C5");
        assert_eq!(r.char(&r.one()), GhostVector::from_i64(&[1, 1]));
        assert_eq!(r.char(&r.basis(0)), GhostVector::from_i64(&[5, 0]));
        assert_eq!(r.uncharacter(&GhostVector::from_i64(&[5, 0])).unwrap(), r.basis(0));
        let s3 = ring("S3");
        assert_eq!(s3.char(&s3.basis(1)), GhostVector::from_i64(&[3, 1, 0, 0]));
        assert_eq!(s3.uncharacter(&GhostVector::from_i64(&[6, 0, 0, 0])).unwrap(), s3.basis(0));
    }

    #[test]
    fn uncharacter_reports_first_fractional_pivot() {
        let r = ring("C3");
        match r.uncharacter(&GhostVector::from_i64(&[1, 0])) {
            Err(BurnsideError::NotInImage { class, numerator, denominator, .. }) => {
                assert_eq!(class, "1:0");
                assert_eq!((numerator, denominator), (BigInt::from(1), BigInt::from(3)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn products() {
        for p in [2, 3, 5, 7] {
            let r = ring(&format!("C{p}"));
            assert_eq!(r.multiply(&r.basis(0), &r.basis(0)), r.basis(0).scale(&BigInt::from(p)));
        }
        let s3 = ring("S3");
        assert_eq!(s3.multiply(&s3.basis(1), &s3.basis(2)), s3.basis(0));
        let x = el(&[1, -2, 3, 4]);
        assert_eq!(s3.multiply(&s3.one(), &x), x);
    }

    #[test]
    fn congruence_examples() {
        let r = ring("C5");
        let terms: Vec<(i64, usize)> =
            r.congruence_terms(0).iter().map(|t| (i64::try_from(&t.coefficient).unwrap(), t.class)).collect();
        assert_eq!(terms, vec![(1, 0), (4, 1)]);
        assert!(!r.is_in_ghost_image(&GhostVector::from_i64(&[1, 0])));
        let s3 = ring("S3");
        let terms: Vec<(i64, usize)> =
            s3.congruence_terms(0).iter().map(|t| (i64::try_from(&t.coefficient).unwrap(), t.class)).collect();
        assert_eq!(terms, vec![(1, 0), (3, 1), (2, 2)]);
        assert!(s3.is_in_ghost_image(&GhostVector::from_i64(&[3, 1, 0, 0])));
    }

    #[test]
    fn restriction_examples() {
        let s3 = ring("S3");
        let g = s3.group();
        let c2 = s3.ccs().class(1).representative.clone();
        let res = s3.restrict_to(&c2, &s3.basis(2)).unwrap();
        // C2 acts on the two cosets of C3 by swapping them
        assert_eq!(res, el(&[1, 0]));
        let one = Subgroup::trivial(g);
        assert_eq!(s3.restrict_to(&one, &s3.basis(1)).unwrap(), el(&[3]));
        let whole = Subgroup::whole(g);
        let x = el(&[2, -1, 0, 5]);
        assert_eq!(s3.restrict_to(&whole, &x).unwrap(), x);
    }

    #[test]
    fn induction_examples() {
        let c4 = ring("C4");
        let c2 = c4.ccs().class(1).representative.clone();
        assert_eq!(c4.induce_from(&c2, &el(&[1, 0])).unwrap(), c4.basis(0));
        assert_eq!(c4.induce_from(&c2, &el(&[0, 1])).unwrap(), c4.basis(1));
        let c2g = Arc::new(FiniteGroup::cyclic(2));
        let proj = GroupHom::new(Arc::clone(c4.group()), c2g, vec![0, 1, 0, 1]).unwrap();
        let r2 = BurnsideRing::new(proj.target());
        assert_eq!(r2.induction(&proj, &c4, &c4.one()), Err(BurnsideError::NotInjective));
    }

    #[test]
    fn completion_examples() {
        let c2 = ring("C2");
        assert_eq!(c2.completion_quotient(3), vec![BigInt::from(4), BigInt::zero()]);
        assert_eq!(c2.completion_quotient(1), vec![BigInt::one(), BigInt::zero()]);
        assert_eq!(ring("trivial").ideal_power_basis(1).rows(), 0);
        assert_eq!(c2.augmentation(&el(&[1, -2])), BigInt::zero());
    }

    #[test]
    fn record_round_trip() {
        let s3 = ring("S3");
        let x = el(&[1, 0, -3, 2]);
        let rec = s3.to_record(&x);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"group":"S3","coeffs":[1,0,-3,2],"basis":["1:0","2:0","3:0","6:0"]}"#);
        let back: ElementRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(s3.from_record(&back).unwrap(), x);
        assert_eq!(s3.format_element(&x), "[G/1:0] - 3[G/3:0] + 2[G/6:0]");
    }
}
