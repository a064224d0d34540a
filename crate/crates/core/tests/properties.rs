use std::collections::{BTreeMap, HashSet};

use nashcurve::product::Staircase;
use nashcurve::{
    flag_nash_semigroup, is_normal_flag, is_normal_simple, nash_semigroup, solve_unique, NumericalSemigroup, Poly,
    Rational,
};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..5, 0u32..5), -6i64..7), 0..6)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|((a, b), c)| ((a, b), q(c)))))
}

/// Nonzero homogeneous polynomial of degree `d`.
fn arb_homogeneous() -> impl Strategy<Value = Poly> {
    (1u32..6)
        .prop_flat_map(|d| (Just(d), prop::collection::vec(-4i64..5, (d + 1) as usize)))
        .prop_filter_map("nonzero", |(d, cs)| {
            let p = Poly::from_terms(cs.iter().enumerate().map(|(i, &c)| ((i as u32, d - i as u32), q(c))));
            (!p.is_zero()).then_some(p)
        })
}

/// Dense schoolbook product on integer coefficient grids.
fn naive_mul(p: &Poly, r: &Poly) -> BTreeMap<(u32, u32), Rational> {
    let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for (&(a, b), c) in p.terms() {
        for (&(e, f), d) in r.terms() {
            *out.entry((a + e, b + f)).or_insert_with(|| q(0)) += c * d;
        }
    }
    out.retain(|_, c| *c != q(0));
    out
}

fn arb_semigroup() -> impl Strategy<Value = NumericalSemigroup> {
    prop::collection::vec(2u32..13, 1..4).prop_filter_map("cofinite", |mut g| {
        g.push(g[0] + 1);
        NumericalSemigroup::from_generators(&g).ok()
    })
}

/// Membership below `bound` by the additive closure of the generators.
fn dp_members(gens: &[u32], bound: usize) -> Vec<bool> {
    let mut m = vec![false; bound];
    m[0] = true;
    for v in 1..bound {
        m[v] = gens.iter().any(|&g| (g as usize) <= v && m[v - g as usize]);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_matches_schoolbook(a in arb_poly(), b in arb_poly()) {
        let fast: BTreeMap<(u32, u32), Rational> = (&a * &b).terms().map(|(e, c)| (*e, c.clone())).collect();
        prop_assert_eq!(fast, naive_mul(&a, &b));
    }

    #[test]
    fn divisibility_order_is_additive(p in arb_homogeneous(), r in arb_homogeneous(), k in 0u32..4) {
        let lifted = &Poly::x_plus_y().pow(k) * &p;
        prop_assert_eq!(lifted.divisibility_order().unwrap(), k + p.divisibility_order().unwrap());
        let both = (&p * &r).divisibility_order().unwrap();
        prop_assert_eq!(both, p.divisibility_order().unwrap() + r.divisibility_order().unwrap());
    }

    #[test]
    fn solve_leaves_zero_residual(
        m in 1usize..5,
        entries in prop::collection::vec(-5i64..6, 30),
        norm in 0usize..6,
    ) {
        let norm = norm % (m + 1);
        let a: Vec<Vec<Rational>> = (0..m).map(|r| (0..=m).map(|c| q(entries[r * 6 + c])).collect()).collect();
        if let Ok(v) = solve_unique(&a, norm) {
            prop_assert_eq!(&v[norm], &q(1));
            for row in &a {
                let dot = row.iter().zip(&v).fold(q(0), |acc, (x, y)| acc + x * y);
                prop_assert_eq!(dot, q(0));
            }
        }
    }

    #[test]
    fn semigroup_matches_dp(s in arb_semigroup()) {
        let bound = (s.conductor() + 2 * s.multiplicity() + 5) as usize;
        let m = dp_members(s.generators(), bound);
        for (v, &inside) in m.iter().enumerate() {
            prop_assert_eq!(s.contains(v as i64), inside, "value {}", v);
        }
        let c = s.conductor() as usize;
        prop_assert!(c == 0 || !m[c - 1]);
        prop_assert!(m[c..].iter().all(|&x| x));
        prop_assert_eq!(s.genus() as usize, m[..c].iter().filter(|&&x| !x).count());
        // Minimal generators are exactly the irreducible nonzero elements.
        for &g in s.generators() {
            let gens_without: Vec<u32> = s.generators().iter().copied().filter(|&h| h != g).collect();
            prop_assert!(!dp_members(&gens_without, g as usize + 1)[g as usize]);
        }
    }

    #[test]
    fn blowups_enlarge_and_match_criteria(s in arb_semigroup(), n in 0usize..5) {
        let simple = nash_semigroup(&s, n).unwrap().output;
        let flag = flag_nash_semigroup(&s, n).unwrap().output;
        prop_assert!(simple.contains_semigroup(&s));
        prop_assert!(flag.contains_semigroup(&simple));
        prop_assert_eq!(simple.is_natural(), is_normal_simple(&s, n));
        prop_assert_eq!(flag.is_natural(), is_normal_flag(&s, n));
    }
}

/// Up-set of `gens` inside the box, by closing under the generators of
/// each factor.
fn brute_upset(ambient: &[NumericalSemigroup], gens: &[Vec<u32>], size: u32) -> HashSet<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut stack: Vec<Vec<u32>> = gens.iter().filter(|g| g.iter().all(|&v| v < size)).cloned().collect();
    while let Some(p) = stack.pop() {
        if !seen.insert(p.clone()) {
            continue;
        }
        for (k, s) in ambient.iter().enumerate() {
            for &g in s.generators() {
                let mut t = p.clone();
                t[k] += g;
                if t[k] < size && !seen.contains(&t) {
                    stack.push(t);
                }
            }
        }
    }
    seen
}

fn box_points(ambient: &[NumericalSemigroup], size: u32) -> Vec<Vec<u32>> {
    let mut pts = vec![Vec::new()];
    for s in ambient {
        let vals: Vec<u32> = (0..size).filter(|&v| s.contains(v as i64)).collect();
        pts = pts.into_iter().flat_map(|p: Vec<u32>| vals.iter().map(move |&v| [p.clone(), vec![v]].concat())).collect();
    }
    pts
}

fn arb_ideal_pair() -> impl Strategy<Value = (Vec<NumericalSemigroup>, Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    let ambient = prop::sample::select(vec![vec![2u32, 3], vec![3, 4], vec![2, 5], vec![1], vec![3, 5, 7]]);
    (ambient.clone(), ambient)
        .prop_map(|(a, b)| {
            vec![NumericalSemigroup::from_generators(&a).unwrap(), NumericalSemigroup::from_generators(&b).unwrap()]
        })
        .prop_flat_map(|amb| {
            let point = (0usize..6, 0usize..6);
            let gens = prop::collection::vec(point, 1..4);
            (Just(amb), gens.clone(), gens, (1usize..6, 1usize..6, 1usize..6, 1usize..6))
        })
        .prop_map(|(amb, g1, g2, (a1, b1, a2, b2))| {
            let to_pts = |g: Vec<(usize, usize)>, ax: usize, bx: usize| {
                let mut pts: Vec<Vec<u32>> = g.into_iter().map(|(i, j)| vec![amb[0].element(i), amb[1].element(j)]).collect();
                pts.push(vec![amb[0].element(ax), 0]);
                pts.push(vec![0, amb[1].element(bx)]);
                pts
            };
            let p = to_pts(g1, a1, b1);
            let r = to_pts(g2, a2, b2);
            (amb, p, r)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn staircase_ideal_laws((amb, p, r) in arb_ideal_pair()) {
        let i = Staircase::cofinite(amb.clone(), p.clone()).unwrap();
        let j = Staircase::cofinite(amb.clone(), r.clone()).unwrap();
        let sum = i.sum(&j).unwrap();
        let meet = i.intersection(&j).unwrap();
        let prod = i.product(&j).unwrap();
        prop_assert_eq!(&sum, &j.sum(&i).unwrap());
        prop_assert_eq!(&meet, &j.intersection(&i).unwrap());
        prop_assert!(sum.contains_staircase(&i) && sum.contains_staircase(&j));
        prop_assert!(i.contains_staircase(&meet) && j.contains_staircase(&meet));
        prop_assert!(meet.contains_staircase(&prod));
        prop_assert_eq!(
            sum.colength().unwrap() + meet.colength().unwrap(),
            i.colength().unwrap() + j.colength().unwrap()
        );

        // Membership and colength against a brute-force closure in a box
        // large enough to hold every complement point.
        let size = amb.iter().map(|s| s.conductor()).max().unwrap() + 80;
        let up_i = brute_upset(&amb, &p, size);
        let up_j = brute_upset(&amb, &r, size);
        let pts = box_points(&amb, size);
        for t in &pts {
            prop_assert_eq!(i.contains(t), up_i.contains(t));
            prop_assert_eq!(meet.contains(t), up_i.contains(t) && up_j.contains(t));
        }
        let outside = pts.iter().filter(|t| !up_i.contains(*t)).count();
        prop_assert_eq!(i.colength().unwrap(), outside);
        let mut comp = i.complement().unwrap();
        comp.sort();
        let mut brute: Vec<Vec<u32>> = pts.into_iter().filter(|t| !up_i.contains(t)).collect();
        brute.sort();
        prop_assert_eq!(comp, brute);
    }
}
