//! Rational class functions: permutation characters of G-sets, Artin
//! elements of cyclic subgroups and the Artin induction identity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::groupkit::{cyclic_subgroups, element_classes, subgroup_as_group, ElementClasses, FiniteGroup, Subgroup};
use crate::zlinalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatrepError {
    #[error("subgroup of order {0} is not cyclic")]
    NotCyclic(usize),
    #[error("class functions live on different groups")]
    GroupMismatch,
}

/// Rational-valued function on conjugacy classes of elements.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    classes: Arc<ElementClasses>,
    pub values: Vec<BigRational>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.values == other.values
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFunctionRecord {
    pub group: String,
    /// Least element index of each class.
    pub representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// Reduced fractions as strings.
    pub values: Vec<String>,
}

impl ClassFunction {
    pub fn constant(group: &Arc<FiniteGroup>, value: BigRational) -> Self {
        let classes = Arc::new(element_classes(group));
        let values = vec![value; classes.len()];
        ClassFunction { group: Arc::clone(group), classes, values }
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self::constant(group, BigRational::zero())
    }

    /// Class function from a function on elements (assumed constant on classes).
    pub fn from_fn(group: &Arc<FiniteGroup>, f: impl Fn(usize) -> BigRational) -> Self {
        let classes = Arc::new(element_classes(group));
        let values = (0..classes.len()).map(|c| f(classes.representative(c))).collect();
        ClassFunction { group: Arc::clone(group), classes, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ElementClasses {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, g: usize) -> &BigRational {
        &self.values[self.classes.class_of[g]]
    }

    fn same_group(&self, other: &Self) -> Result<(), RatrepError> {
        if *self.group == *other.group {
            Ok(())
        } else {
            Err(RatrepError::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RatrepError> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { values, ..self.clone() })
    }

    pub fn pointwise_mul(&self, other: &Self) -> Result<Self, RatrepError> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction { values, ..self.clone() })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ClassFunction { values: self.values.iter().map(|v| v * c).collect(), ..self.clone() }
    }

    /// `⟨f, h⟩ = (1/|G|) Σ_g f(g)·h(g⁻¹)`
    pub fn inner_product(&self, other: &Self) -> Result<BigRational, RatrepError> {
        self.same_group(other)?;
        let g = &self.group;
        let sum: BigRational = g.elements().map(|x| self.at(x) * other.at(g.inv(x))).sum();
        Ok(sum / BigRational::from_integer(BigInt::from(g.order())))
    }

    pub fn to_record(&self) -> ClassFunctionRecord {
        ClassFunctionRecord {
            group: self.group.label().to_string(),
            representatives: (0..self.classes.len()).map(|c| self.classes.representative(c)).collect(),
            class_sizes: self.classes.classes.iter().map(Vec::len).collect(),
            values: self.values.iter().map(ToString::to_string).collect(),
        }
    }
}

/// `[S] ↦` character of `ℚ[S]`: the value at `g` is `|S^g|`.
pub fn permutation_character(ring: &BurnsideRing, x: &BurnsideElement) -> ClassFunction {
    let g = ring.group();
    let marks = &ring.marks().matrix;
    ClassFunction::from_fn(g, |e| {
        let k = ring.ccs().class_of(&Subgroup::cyclic(g, e)).expect("cyclic subgroup has a class");
        let v: BigInt = x.coeffs.iter().enumerate().map(|(h, c)| c * marks.get(h, k)).sum();
        BigRational::from_integer(v)
    })
}

/// `θ_C` on `C` viewed as a group of its own: `|C|` at generators, 0 elsewhere.
pub fn artin_element(g: &Arc<FiniteGroup>, c: &Subgroup) -> Result<ClassFunction, RatrepError> {
    if !c.is_cyclic(g) {
        return Err(RatrepError::NotCyclic(c.order()));
    }
    let (cg, _) = subgroup_as_group(g, c);
    let n = cg.order();
    Ok(ClassFunction::from_fn(&cg, |x| {
        if cg.element_order(x) == n {
            BigRational::from_integer(BigInt::from(n))
        } else {
            BigRational::zero()
        }
    }))
}

/// `(ind f)(g) = (1/|H|) Σ_{x ∈ G, x⁻¹gx ∈ H} f(x⁻¹gx)`, where `f` lives on
/// `H` numbered by position in `h.elements()`.
pub fn induce(g: &Arc<FiniteGroup>, h: &Subgroup, f: &ClassFunction) -> ClassFunction {
    assert_eq!(f.group().order(), h.order(), "class function of a different subgroup");
    let denom = BigRational::from_integer(BigInt::from(h.order()));
    ClassFunction::from_fn(g, |e| {
        let mut sum = BigRational::zero();
        for x in g.elements() {
            let y = g.conj(g.inv(x), e);
            if let Ok(pos) = h.elements().binary_search(&y) {
                sum += f.at(pos);
            }
        }
        sum / &denom
    })
}

/// Both sides of `|G|·[ℚ] = Σ_{C cyclic} ind_C θ_C`.
#[derive(Clone, Debug)]
pub struct ArtinReport {
    pub holds: bool,
    pub left: ClassFunction,
    pub right: ClassFunction,
    pub cyclic_subgroups: usize,
}

/// Sums over every cyclic subgroup, not over conjugacy classes.
pub fn verify_artin(g: &Arc<FiniteGroup>) -> ArtinReport {
    let left = ClassFunction::constant(g, BigRational::from_integer(BigInt::from(g.order())));
    let mut right = ClassFunction::zero(g);
    let cyclics = cyclic_subgroups(g);
    for c in &cyclics {
        let theta = artin_element(g, c).expect("cyclic");
        right = right.add(&induce(g, c, &theta)).expect("same group");
    }
    ArtinReport { holds: left == right, left, right, cyclic_subgroups: cyclics.len() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RationalRank {
    pub image_rank: usize,
    pub cyclic_class_count: usize,
}

impl RationalRank {
    pub fn surjective(&self) -> bool {
        self.image_rank == self.cyclic_class_count
    }
}

/// Rank of the marks `|(G/H)^C|` at cyclic classes `C`.
pub fn rational_rank_check(ring: &BurnsideRing) -> RationalRank {
    let g = ring.group();
    let cyclic: Vec<usize> = (0..ring.len()).filter(|&k| ring.ccs().class(k).representative.is_cyclic(g)).collect();
    let marks = &ring.marks().matrix;
    let rows = (0..ring.len()).map(|h| cyclic.iter().map(|&k| marks.get(h, k).clone()).collect()).collect();
    let m = IntMatrix::from_rows(rows, cyclic.len()).expect("rectangular");
    RationalRank { image_rank: m.rank(), cyclic_class_count: cyclic.len() }
}

/// Regular character: `|G|` at the identity, 0 elsewhere.
pub fn regular_character(g: &Arc<FiniteGroup>) -> ClassFunction {
    let e = g.identity();
    let n = BigRational::from_integer(BigInt::from(g.order()));
    ClassFunction::from_fn(g, |x| if x == e { n.clone() } else { BigRational::zero() })
}

/// Trivial character of `G`.
pub fn trivial_character(g: &Arc<FiniteGroup>) -> ClassFunction {
    ClassFunction::constant(g, BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::named_group;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn s3_permutation_characters() {
        let ring = BurnsideRing::of(named_group("S3", 400).unwrap());
        let g = ring.group().clone();
        let c2 = ring.label_index("2:0").unwrap();
        let chi = permutation_character(&ring, &ring.basis(c2));
        let transposition = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let three_cycle = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(chi.at(g.identity()), &q(3));
        assert_eq!(chi.at(transposition), &q(1));
        assert_eq!(chi.at(three_cycle), &q(0));
        assert_eq!(permutation_character(&ring, &ring.basis(0)), regular_character(&g));
        assert_eq!(permutation_character(&ring, &ring.one()), trivial_character(&g));
    }

    #[test]
    fn artin_elements() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let whole = Subgroup::whole(&g);
        let theta = artin_element(&g, &whole).unwrap();
        let values: Vec<BigRational> = (0..4).map(|x| theta.at(x).clone()).collect();
        assert_eq!(values, vec![q(0), q(4), q(0), q(4)]);
        let trivial = artin_element(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(trivial.values, vec![q(1)]);
        let v4 = Arc::new(named_group("V4", 400).unwrap());
        assert_eq!(artin_element(&v4, &Subgroup::whole(&v4)), Err(RatrepError::NotCyclic(4)));
    }

    #[test]
    fn artin_identity_and_ranks() {
        for name in ["trivial", "C5", "S3", "Q8", "V4"] {
            let g = Arc::new(named_group(name, 400).unwrap());
            assert!(verify_artin(&g).holds, "{name}");
        }
        let v4 = BurnsideRing::of(named_group("V4", 400).unwrap());
        assert_eq!(rational_rank_check(&v4), RationalRank { image_rank: 4, cyclic_class_count: 4 });
        let s3 = BurnsideRing::of(named_group("S3", 400).unwrap());
        assert_eq!(rational_rank_check(&s3).image_rank, 3);
    }

    #[test]
    fn frobenius_reciprocity_s3() {
        let ring = BurnsideRing::of(named_group("S3", 400).unwrap());
        let g = ring.group().clone();
        let h = ring.ccs().class(1).representative.clone();
        let (hg, incl) = subgroup_as_group(&g, &h);
        let sign_h = ClassFunction::from_fn(&hg, |x| if x == hg.identity() { q(1) } else { q(-1) });
        let chi = permutation_character(&ring, &ring.basis(ring.label_index("3:0").unwrap()));
        let restricted = ClassFunction::from_fn(&hg, |x| chi.at(incl.apply(x)).clone());
        let lhs = induce(&g, &h, &sign_h).inner_product(&chi).unwrap();
        let rhs = sign_h.inner_product(&restricted).unwrap();
        assert_eq!(lhs, rhs);
    }
}
