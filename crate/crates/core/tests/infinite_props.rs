mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use burnside_core::groupkit::{catalog_group, double_cosets, quotient_group, subgroup_as_group, FiniteGroup, GroupHom};
use burnside_core::infinite::{
    condition_c, finset_membership, finset_z_profile, global_character, integrality_check, inverse_limit, l2_character,
    limit_is_subring, map_t, map_v, pairing_mu, pairing_nu, pairing_q, prufer_solution_lattice, pullback_profile,
    z_congruences, CcsfStructure, CovariantElement, DiagramRecord, FinsetElement, FusionData, FusionRecord,
    InfiniteError, InverseLimit, SubFinDiagram,
};
use burnside_core::zlinalg::lattice_contains;
use burnside_core::{BurnsideElement, BurnsideRing, GhostVector, IntMatrix};
use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

fn read_sample<T: serde::de::DeserializeOwned>(name: &str) -> T {
    serde_json::from_str(&std::fs::read_to_string(samples_dir().join(name)).unwrap()).unwrap()
}

/// The finite group as its own diagram, with the inclusions of every object.
fn group_diagram(ring: &BurnsideRing) -> (SubFinDiagram, CcsfStructure, BTreeMap<usize, GroupHom>) {
    let d = SubFinDiagram::from_finite_group(ring);
    let s = CcsfStructure::colimit(&d);
    let homs = ring
        .ccs()
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| (i, subgroup_as_group(ring.group(), &c.representative).1))
        .collect();
    (d, s, homs)
}

fn whole_group_object(d: &SubFinDiagram) -> usize {
    d.objects().len() - 1
}

/// Label of each class of the whole group in the colimit structure.
fn label_of_class(d: &SubFinDiagram, s: &CcsfStructure, i: usize) -> String {
    s.labels[s.assign[whole_group_object(d)][i]].clone()
}

fn to_covariant(d: &SubFinDiagram, s: &CcsfStructure, x: &BurnsideElement) -> CovariantElement {
    map_v(whole_group_object(d), x, s)
}

#[test]
fn finite_group_diagram_recovers_the_burnside_ring() {
    for name in catalog_up_to(24) {
        let ring = Arc::new(ring(name));
        let (d, s, homs) = group_diagram(&ring);
        s.validate(&d).unwrap();
        assert_eq!(s.labels.len(), ring.len(), "{name}");
        let lim = inverse_limit(&d).unwrap();
        assert_eq!(lim.rank, ring.len(), "{name}");
        assert!(limit_is_subring(&d, &lim), "{name}");
        for i in 0..ring.len() {
            let s_elem = FinsetElement { quotient: Arc::clone(&ring), element: ring.basis(i), homs: homs.clone() };
            let parts = map_t(&d, &s_elem).unwrap();
            assert_eq!(parts[whole_group_object(&d)], ring.basis(i));
            assert!(lim.contains(&InverseLimit::concat(&parts)), "{name}");
        }
    }
}

#[test]
fn star_limits_glue_at_the_trivial_group() {
    let arms = [catalog_group("C2"), catalog_group("C3"), catalog_group("S3"), catalog_group("V4")];
    let d = SubFinDiagram::star(&arms);
    let lim = inverse_limit(&d).unwrap();
    let expected = 1 + arms.iter().map(|a| BurnsideRing::of(a.clone()).len() - 1).sum::<usize>();
    assert_eq!(lim.rank, expected);
    assert!(limit_is_subring(&d, &lim));
    let s = CcsfStructure::colimit(&d);
    assert_eq!(s.labels.len(), expected);
    let back = SubFinDiagram::from_record(&d.to_record(), 400).unwrap();
    assert_eq!(inverse_limit(&back).unwrap().rank, expected);
    let rec: DiagramRecord = read_sample("dinfinity_diagram.json");
    let dinf = SubFinDiagram::from_record(&rec, 400).unwrap();
    assert_eq!(inverse_limit(&dinf).unwrap().rank, 3);
}

/// `x(j) ≡ x(j+1) mod p^(n−j)` for all `j < n`.
fn prufer_congruences(p: usize, n: usize, x: &[BigInt]) -> bool {
    (0..n).all(|j| (&x[j] - &x[j + 1]).mod_floor(&BigInt::from(p.pow((n - j) as u32))).is_zero())
}

#[test]
fn prufer_lattice_is_the_congruence_lattice() {
    let mut r = rng(31);
    for (p, n) in [(2, 3), (3, 2), (2, 4), (5, 2)] {
        let d = SubFinDiagram::prufer(p, n);
        let s = CcsfStructure::colimit(&d);
        let lattice = prufer_solution_lattice(p, n);
        for _ in 0..300 {
            let base = r.gen_range(-5..=5);
            let x: Vec<BigInt> =
                (0..=n).map(|_| big(base + p as i64 * r.gen_range(-2..=2) * r.gen_range(0..=1))).collect();
            let all = (0..=n).all(|k| condition_c(&d, &s, &x, k).unwrap());
            assert_eq!(all, prufer_congruences(p, n, &x), "p={p} n={n} {x:?}");
            assert_eq!(all, lattice_contains(&lattice, &x));
            // condition C at a larger cyclic group implies it at every smaller one
            for k in 1..=n {
                if condition_c(&d, &s, &x, k).unwrap() {
                    assert!(condition_c(&d, &s, &x, k - 1).unwrap());
                }
            }
        }
    }
}

#[test]
fn z_congruences_match_mobius_inversion() {
    let mut r = rng(32);
    for _ in 0..2000 {
        let len = r.gen_range(1..=12);
        let x: Vec<BigInt> = (0..len).map(|_| big(r.gen_range(-3..=3))).collect();
        let accepted = z_congruences(&x).iter().all(|c| c.residue.is_zero());
        assert_eq!(accepted, mobius_integral(&x), "{x:?}");
    }
    for _ in 0..200 {
        let coeffs: BTreeMap<usize, BigInt> = (0..3).map(|_| (r.gen_range(1..=10), big(r.gen_range(-4..=4)))).collect();
        let profile = finset_z_profile(&coeffs, 20);
        assert!(profile.accepted());
        assert!(mobius_integral(&profile.values));
    }
    // ℤ/p with a fixed point count of 1 at p is not a finite ℤ-set profile
    for p in [2i64, 3, 5, 7] {
        let mut x = vec![big(0); p as usize];
        x[p as usize - 1] = big(1);
        assert!(!mobius_integral(&x));
        assert!(!z_congruences(&x).iter().all(|c| c.residue.is_zero()));
    }
}

#[test]
fn finset_membership_and_pullback() {
    let g = Arc::new(catalog_group("S4"));
    let upper = BurnsideRing::new(&g);
    let v4 = upper.ccs().subgroups().iter().find(|s| s.order() == 4 && s.is_normal(&g)).unwrap().clone();
    let (q, proj) = quotient_group(&g, &v4).unwrap();
    let lower = BurnsideRing::new(&q);
    let mut r = rng(33);
    for _ in 0..50 {
        let x = random_element(&mut r, &lower, 4);
        let pulled = pullback_profile(&proj, &upper, &lower, &lower.char(&x));
        let direct = upper.char(&lower.restrict_along(&proj, &upper, &x).unwrap());
        assert_eq!(pulled, direct);
        assert!(upper.is_in_ghost_image(&pulled));
        let labelled: BTreeMap<String, BigInt> = lower.ccs().labels().into_iter().zip(lower.char(&x).values).collect();
        assert!(finset_membership(Some(&lower), &labelled).unwrap());
    }
    let zp = BurnsideRing::of(FiniteGroup::cyclic(3));
    let bad = BTreeMap::from([("1:0".to_string(), big(1)), ("3:0".to_string(), big(0))]);
    assert!(!finset_membership(Some(&zp), &bad).unwrap());
    assert_eq!(finset_membership(None, &bad), Err(InfiniteError::MissingQuotient));
    let partial = BTreeMap::from([("1:0".to_string(), big(1))]);
    assert_eq!(finset_membership(Some(&zp), &partial), Err(InfiniteError::MissingLabel("3:0".into())));
}

/// `ch_K(G/H) = |K| · #{L ⊆ H : L ~_G K} / |H|`, counting subgroups directly.
fn l2_oracle(ring: &BurnsideRing, k: usize, h: usize) -> BigRational {
    let hh = &ring.ccs().class(h).representative;
    let kc = ring.ccs().class(k);
    let count = kc.conjugates.iter().filter(|l| l.is_subset(hh)).count();
    BigRational::new(BigInt::from(kc.order() * count), BigInt::from(hh.order()))
}

#[test]
fn l2_characters_of_finite_groups_count_subgroups() {
    for name in catalog_up_to(24) {
        let ring = ring(name);
        let f = FusionData::from_finite_group(&ring);
        for h in 0..ring.len() {
            for k in 0..ring.len() {
                assert_eq!(f.basis_character(k, h).unwrap(), l2_oracle(&ring, k, h), "{name} ({k},{h})");
            }
        }
        let back = FusionData::from_record(&f.to_record()).unwrap();
        let t = CovariantElement::from([(ring.ccs().class(ring.len() - 1).label.clone(), big(1))]);
        for l in &f.labels {
            assert_eq!(l2_character(&t, &l.name, &f).unwrap(), l2_character(&t, &l.name, &back).unwrap());
        }
    }
}

/// `x ∈ A_T·ℤⁿ`, decided by clearing denominators and testing lattice membership.
fn in_character_image(a: &[Vec<BigRational>], x: &[BigRational]) -> bool {
    let n = x.len();
    let den = a.iter().flatten().chain(x).fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scale = |v: &BigRational| (v * BigRational::from_integer(den.clone())).to_integer();
    // generators are the columns of A_T
    let rows: Vec<Vec<BigInt>> = (0..n).map(|j| (0..n).map(|i| scale(&a[i][j])).collect()).collect();
    let m = IntMatrix::from_rows(rows, n).unwrap();
    lattice_contains(&m, &x.iter().map(scale).collect::<Vec<_>>())
}

fn check_integrality_against_oracle(f: &FusionData, r: &mut rand_chacha::ChaCha8Rng, rounds: usize) {
    let labels: Vec<String> = f.labels.iter().map(|l| l.name.clone()).collect();
    let cert0 = integrality_check(&labels.iter().map(|l| (l.clone(), BigRational::zero())).collect(), f).unwrap();
    let n = labels.len();
    let a: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| cert0.a_t.get(i, j).clone()).collect()).collect();
    for _ in 0..rounds {
        let t: CovariantElement = labels.iter().map(|l| (l.clone(), big(r.gen_range(-3..=3)))).collect();
        let ch = global_character(&t, &labels, f).unwrap();
        let cert = integrality_check(&ch, f).unwrap();
        assert!(cert.accepted);
        let expected: Vec<BigRational> = cert.order.iter().map(|l| BigRational::from_integer(t[l].clone())).collect();
        assert_eq!(cert.coordinates, expected);
        let x: BTreeMap<String, BigRational> = labels
            .iter()
            .map(|l| (l.clone(), BigRational::new(big(r.gen_range(-6..=6)), big(r.gen_range(1..=4)))))
            .collect();
        let cert = integrality_check(&x, f).unwrap();
        let ordered: Vec<BigRational> = cert.order.iter().map(|l| x[l].clone()).collect();
        assert_eq!(cert.accepted, in_character_image(&a, &ordered), "{x:?}");
    }
}

#[test]
fn integrality_matches_character_image() {
    let mut r = rng(34);
    for name in ["S3", "D4", "A4", "C6", "Q8"] {
        check_integrality_against_oracle(&FusionData::from_finite_group(&ring(name)), &mut r, 100);
    }
    for (p, k) in [(2, 2), (3, 3), (5, 2), (7, 1)] {
        check_integrality_against_oracle(&FusionData::extension_by_cyclic(p, k), &mut r, 100);
    }
    let dinf = FusionData::from_record(&read_sample::<FusionRecord>("dinfinity_fusion.json")).unwrap();
    check_integrality_against_oracle(&dinf, &mut r, 200);
}

#[test]
fn sample_characters() {
    #[derive(serde::Deserialize)]
    struct Input {
        character: BTreeMap<String, String>,
    }
    let f = FusionData::from_record(&read_sample::<FusionRecord>("extension_p3_r3_fusion.json")).unwrap();
    for (file, verdict) in [("covariant_character_accept.json", true), ("covariant_character_reject.json", false)] {
        let input: Input = read_sample(file);
        let x = input.character.iter().map(|(k, v)| (k.clone(), v.parse::<BigRational>().unwrap())).collect();
        let cert = integrality_check(&x, &f).unwrap();
        assert_eq!(cert.accepted, verdict, "{file}");
        assert_eq!(cert.relations().len(), 4);
    }
}

#[test]
fn nu_counts_double_cosets() {
    for name in ["S3", "D4", "A4", "S4"] {
        let ring = Arc::new(ring(name));
        let g = ring.group();
        let (d, s, homs) = group_diagram(&ring);
        let lim = inverse_limit(&d).unwrap();
        for k in 0..ring.len() {
            let elem = FinsetElement { quotient: Arc::clone(&ring), element: ring.basis(k), homs: homs.clone() };
            let x = InverseLimit::concat(&map_t(&d, &elem).unwrap());
            for h in 0..ring.len() {
                let t = CovariantElement::from([(label_of_class(&d, &s, h), big(1))]);
                let expected =
                    double_cosets(g, &ring.ccs().class(h).representative, &ring.ccs().class(k).representative).len();
                assert_eq!(pairing_nu(&d, &s, &lim, &x, &t).unwrap(), big(expected as i64), "{name}");
            }
        }
        let t = CovariantElement::from([("nowhere".to_string(), big(1))]);
        let x = InverseLimit::concat(&d.rings().iter().map(|r| r.one()).collect::<Vec<_>>());
        assert_eq!(pairing_nu(&d, &s, &lim, &x, &t), Err(InfiniteError::UnreachableLabel("nowhere".into())));
    }
}

#[test]
fn mu_is_multiplication_for_finite_groups() {
    let mut r = rng(35);
    for name in ["S3", "D4", "A4", "C2xC4"] {
        let ring = Arc::new(ring(name));
        let (d, s, homs) = group_diagram(&ring);
        let lim = inverse_limit(&d).unwrap();
        for _ in 0..10 {
            let set = random_element(&mut r, &ring, 3);
            let elem = FinsetElement { quotient: Arc::clone(&ring), element: set.clone(), homs: homs.clone() };
            let x = InverseLimit::concat(&map_t(&d, &elem).unwrap());
            for h in 0..ring.len() {
                let t = to_covariant(&d, &s, &ring.basis(h));
                let mu = pairing_mu(&d, &s, &elem, &t).unwrap();
                assert_eq!(mu, to_covariant(&d, &s, &ring.multiply(&ring.basis(h), &set)), "{name}");
                // number of H-orbits of S, two ways
                assert_eq!(pairing_q(&mu), pairing_nu(&d, &s, &lim, &x, &t).unwrap());
            }
        }
        let bare = FinsetElement::unit(Arc::clone(&ring), BTreeMap::new());
        let t = to_covariant(&d, &s, &ring.basis(0));
        assert!(matches!(pairing_mu(&d, &s, &bare, &t), Err(InfiniteError::MissingHomomorphism(_))));
        assert!(matches!(map_t(&d, &bare), Err(InfiniteError::MissingHomomorphism(_))));
    }
}

#[test]
fn torsionfree_diagram_counts_points() {
    // only the trivial subgroup: a torsionfree group such as ℤ
    let d = SubFinDiagram::new(vec![Arc::new(FiniteGroup::trivial())], Vec::new()).unwrap();
    let s = CcsfStructure::colimit(&d);
    for n in 1..=6 {
        let q = Arc::new(BurnsideRing::of(FiniteGroup::cyclic(n)));
        let hom =
            GroupHom::new(Arc::clone(&d.objects()[0]), Arc::clone(q.group()), vec![q.group().identity()]).unwrap();
        let homs = BTreeMap::from([(0, hom)]);
        let free = FinsetElement { quotient: Arc::clone(&q), element: q.basis(0), homs: homs.clone() };
        assert_eq!(map_t(&d, &free).unwrap(), vec![BurnsideElement::from_i64(&[n as i64])]);
        let unit = FinsetElement::unit(Arc::clone(&q), homs);
        assert_eq!(map_t(&d, &unit).unwrap(), vec![BurnsideElement::from_i64(&[1])]);
        let t = CovariantElement::from([(s.labels[0].clone(), big(1))]);
        let mu = pairing_mu(&d, &s, &free, &t).unwrap();
        assert_eq!(mu, CovariantElement::from([(s.labels[0].clone(), big(n as i64))]));
    }
}

#[test]
fn map_v_commutes_with_induction() {
    let mut r = rng(36);
    for name in ["S3", "D4", "A4", "S4"] {
        let ring = ring(name);
        let (d, s, _) = group_diagram(&ring);
        for (obj, class) in ring.ccs().classes().iter().enumerate() {
            let sub = d.ring(obj);
            for _ in 0..5 {
                let a = random_element(&mut r, sub, 3);
                let induced = ring.induce_from(&class.representative, &a).unwrap();
                assert_eq!(map_v(obj, &a, &s), to_covariant(&d, &s, &induced), "{name}");
                let total: BigInt = a.coeffs.iter().sum();
                assert_eq!(pairing_q(&map_v(obj, &a, &s)), total);
            }
        }
    }
}

#[test]
fn fusion_errors() {
    let rec: FusionRecord = serde_json::from_str(
        r#"{"labels":[{"name":"1","order":1},{"name":"H","order":2}],
            "fusion":{"(1),(1)":[{"L":0,"normalizer_meet":1}]}}"#,
    )
    .unwrap();
    let f = FusionData::from_record(&rec).unwrap();
    assert_eq!(f.basis_character(0, 1), Err(InfiniteError::MissingFusionEntry("1".into(), "H".into())));
    let bad: FusionRecord = serde_json::from_str(
        r#"{"labels":[{"name":"1","order":1},{"name":"H","order":2}],
            "fusion":{"(1),(H)":[{"L":0,"normalizer_meet":3}]}}"#,
    )
    .unwrap();
    assert!(matches!(FusionData::from_record(&bad), Err(InfiniteError::BadFusion(_))));
    let t = CovariantElement::from([("K".to_string(), big(1))]);
    assert_eq!(l2_character(&t, "1", &f), Err(InfiniteError::MissingLabel("K".into())));
}

fn prufer_diagram() -> &'static (SubFinDiagram, CcsfStructure) {
    use std::sync::OnceLock;
    static D: OnceLock<(SubFinDiagram, CcsfStructure)> = OnceLock::new();
    D.get_or_init(|| {
        let d = SubFinDiagram::prufer(3, 3);
        let s = CcsfStructure::colimit(&d);
        (d, s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn condition_c_descends_along_the_chain(base in -20i64..20, steps in proptest::collection::vec(-3i64..=3, 3)) {
        let (d, s) = prufer_diagram();
        let mut x = vec![big(base)];
        for (j, st) in steps.iter().enumerate() {
            let prev = x[j].clone();
            x.push(prev + big(st * 3i64.pow(j as u32)));
        }
        let verdicts: Vec<bool> = (0..=3).map(|k| condition_c(d, s, &x, k).unwrap()).collect();
        for k in 1..=3 {
            prop_assert!(!verdicts[k] || verdicts[k - 1]);
        }
        prop_assert_eq!(verdicts[3], prufer_congruences(3, 3, &x));
    }

    #[test]
    fn star_condition_is_per_arm(values in proptest::collection::vec(-6i64..=6, 3)) {
        let d = SubFinDiagram::star(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)]);
        let s = CcsfStructure::colimit(&d);
        let x: Vec<BigInt> = values.iter().map(|&v| big(v)).collect();
        // labels ordered by order: trivial, ℤ/2, ℤ/3
        prop_assert_eq!(condition_c(&d, &s, &x, 1).unwrap(), (values[0] - values[1]) % 2 == 0);
        prop_assert_eq!(condition_c(&d, &s, &x, 2).unwrap(), (values[0] - values[2]) % 3 == 0);
        let ghost = GhostVector { values: vec![x[0].clone()] };
        prop_assert!(d.ring(0).is_in_ghost_image(&ghost));
    }
}
