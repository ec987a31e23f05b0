//! Lattice laws, widening/narrowing axioms and transfer soundness of the
//! shipped domains, checked on random samples against brute-force
//! enumeration over a small window of integers.

use descend_core::domains::{
    Abstract, BoxSet, Env, Interval, IntervalBox, IntervalSet, Parity, ParityEnv, Scalar,
};
use descend_core::frontend::{CmpOp, Cond, Expr, VarId};
use descend_core::lattice::{
    check_narrowing_axioms, check_narrowing_with, check_widening_axioms, GlbNarrowing, Lattice,
    Widening,
};
use descend_core::BigInt;
use proptest::prelude::*;

const W: i64 = 12;

fn interval() -> impl Strategy<Value = Interval> {
    prop_oneof![
        1 => Just(Interval::Bottom),
        1 => Just(Interval::full()),
        2 => (-W..=W).prop_map(Interval::at_least),
        2 => (-W..=W).prop_map(Interval::at_most),
        8 => (-W..=W, 0..=W).prop_map(|(l, d)| Interval::finite(l, l + d)),
    ]
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![
        Just(Parity::Bottom),
        Just(Parity::Even),
        Just(Parity::Odd),
        Just(Parity::Top)
    ]
}

fn ibox() -> impl Strategy<Value = IntervalBox> {
    prop::collection::vec(interval(), 2).prop_map(IntervalBox::from_values)
}

fn iset() -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec(interval(), 0..4).prop_map(IntervalSet::normalize)
}

fn bset() -> impl Strategy<Value = BoxSet> {
    prop::collection::vec(ibox(), 0..4).prop_map(BoxSet::normalize)
}

fn gamma_itv(i: &Interval) -> Vec<i64> {
    (-3 * W..=3 * W).filter(|&v| i.contains(v)).collect()
}

/// Lattice laws that every domain must satisfy.
fn lattice_laws<D: Lattice>(a: &D, b: &D, c: &D) -> Result<(), TestCaseError> {
    prop_assert!(a.leq(a));
    if a.leq(b) && b.leq(c) {
        prop_assert!(a.leq(c));
    }
    if a.leq(b) && b.leq(a) {
        prop_assert!(a.equal(b));
    }
    let j = a.join(b);
    prop_assert!(a.leq(&j) && b.leq(&j));
    if a.leq(c) && b.leq(c) {
        prop_assert!(j.leq(c), "join is not least");
    }
    let m = a.meet(b);
    prop_assert!(m.leq(a) && m.leq(b));
    if c.leq(a) && c.leq(b) {
        prop_assert!(c.leq(&m), "meet is not greatest");
    }
    prop_assert!(D::bottom().leq(a));
    prop_assert!(D::bottom().is_bottom());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn interval_lattice(a in interval(), b in interval(), c in interval()) {
        lattice_laws(&a, &b, &c)?;
        prop_assert!(a.leq(&Interval::top(1)));
    }

    #[test]
    fn parity_lattice(a in parity(), b in parity(), c in parity()) {
        lattice_laws(&a, &b, &c)?;
    }

    #[test]
    fn box_lattice(a in ibox(), b in ibox(), c in ibox()) {
        lattice_laws(&a, &b, &c)?;
        prop_assert!(a.leq(&IntervalBox::top(2)));
    }

    #[test]
    fn iset_lattice(a in iset(), b in iset(), c in iset()) {
        lattice_laws(&a, &b, &c)?;
    }

    #[test]
    fn bset_lattice(a in bset(), b in bset(), c in bset()) {
        lattice_laws(&a, &b, &c)?;
    }

    #[test]
    fn interval_order_matches_sets(a in interval(), b in interval()) {
        // Window large enough to see every finite bound and some slack.
        let (ga, gb) = (gamma_itv(&a), gamma_itv(&b));
        prop_assert_eq!(a.leq(&b), ga.iter().all(|v| gb.contains(v)));
        let gm: Vec<i64> = ga.iter().copied().filter(|v| gb.contains(v)).collect();
        prop_assert_eq!(gamma_itv(&a.meet(&b)), gm);
    }

    #[test]
    fn powerset_normal_form(raw in prop::collection::vec(interval(), 0..6)) {
        let s = IntervalSet::normalize(raw.clone());
        let elems = s.elements();
        for (i, x) in elems.iter().enumerate() {
            prop_assert!(!x.is_bottom());
            for (j, y) in elems.iter().enumerate() {
                prop_assert!(i == j || !x.leq(y), "redundant element");
            }
        }
        // Same concretization as the raw union.
        let union = |v: &[Interval]| -> Vec<i64> {
            (-3 * W..=3 * W).filter(|&n| v.iter().any(|i| i.contains(n))).collect()
        };
        prop_assert_eq!(union(elems), union(&raw));
        prop_assert!(elems.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn interval_arithmetic_sound(a in interval(), b in interval()) {
        for x in gamma_itv(&a).into_iter().filter(|v| v.abs() <= W) {
            for y in gamma_itv(&b).into_iter().filter(|v| v.abs() <= W) {
                prop_assert!(a.add(&b).contains(x + y));
                prop_assert!(a.sub(&b).contains(x - y));
                prop_assert!(a.mul(&b).contains(x * y));
                prop_assert!(a.neg().contains(-x));
            }
        }
    }

    #[test]
    fn parity_arithmetic_sound(a in parity(), b in parity()) {
        let members = |p: &Parity| (-4..=4).filter(|&v| p.contains(v)).collect::<Vec<_>>();
        for x in members(&a) {
            for y in members(&b) {
                prop_assert!(a.add(&b).contains(x + y));
                prop_assert!(a.mul(&b).contains(x * y));
                prop_assert!(a.sub(&b).contains(x - y));
            }
        }
    }

    #[test]
    fn interval_refine_sound(a in interval(), b in interval(), op_ix in 0usize..6) {
        let op = [CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq, CmpOp::Ne][op_ix];
        let r = a.refine(op, &b);
        prop_assert!(r.leq(&a));
        let mut any = false;
        for x in gamma_itv(&a).into_iter().filter(|v| v.abs() <= W) {
            for y in gamma_itv(&b).into_iter().filter(|v| v.abs() <= W) {
                if op.holds(&x, &y) {
                    any = true;
                    prop_assert!(r.contains(x), "{} {} {} lost {}", a, op.symbol(), b, x);
                }
            }
        }
        if any {
            prop_assert!(a.may_satisfy(op, &b));
        }
    }

    #[test]
    fn box_assume_sound(a in ibox(), c in -W..=W, op_ix in 0usize..6, swap in any::<bool>()) {
        let op = [CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq, CmpOp::Ne][op_ix];
        let (lhs, rhs) = if swap {
            (Expr::var(1), Expr::plus(Expr::var(0), Expr::constant(c)))
        } else {
            (Expr::var(0), Expr::plus(Expr::var(1), Expr::constant(c)))
        };
        let cond = Cond::new(lhs.clone(), op, rhs.clone());
        let r = a.assume(&cond);
        prop_assert!(r.leq(&a));
        if let Env::Vals(v) = &a {
            for x in gamma_itv(&v[0]).into_iter().filter(|v| v.abs() <= W) {
                for y in gamma_itv(&v[1]).into_iter().filter(|v| v.abs() <= W) {
                    let (l, rr) = if swap { (y, x + c) } else { (x, y + c) };
                    if op.holds(&l, &rr) {
                        prop_assert!(r.contains_state(&[Some(x), Some(y)], W));
                    }
                }
            }
        }
    }

    #[test]
    fn box_assign_sound(a in ibox(), k in -3i64..=3) {
        let e = Expr::plus(Expr::times(Expr::constant(k), Expr::var(0)), Expr::var(1));
        let r = a.assign(VarId(1), &e);
        if let Env::Vals(v) = &a {
            for x in gamma_itv(&v[0]).into_iter().filter(|v| v.abs() <= W) {
                for y in gamma_itv(&v[1]).into_iter().filter(|v| v.abs() <= W) {
                    prop_assert!(r.contains_state(&[Some(x), Some(k * x + y)], 10 * W));
                }
            }
        } else {
            prop_assert!(r.is_bottom());
        }
    }

    #[test]
    fn parity_env_assign_sound(x in -6i64..=6, y in -6i64..=6) {
        let env = ParityEnv::from_values(vec![Parity::of(x), Parity::of(y)]);
        let e = Expr::plus(Expr::times(Expr::constant(3), Expr::var(0)), Expr::var(1));
        let r = env.assign(VarId(0), &e);
        prop_assert!(r.contains_state(&[Some(3 * x + y), Some(y)], 100));
    }
}

fn sample_pairs<S: Strategy>(strategy: S, n: usize) -> Vec<(S::Value, S::Value)> {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    let mut draw = || strategy.new_tree(&mut runner).unwrap().current();
    (0..n).map(|_| (draw(), draw())).collect()
}

#[test]
fn widening_and_narrowing_axioms_ten_thousand_pairs() {
    const N: usize = 10_000;
    let itv = sample_pairs(interval(), N);
    assert!(check_widening_axioms(&itv).is_empty());
    assert!(check_narrowing_axioms(&itv).is_empty());
    let par = sample_pairs(parity(), N);
    assert!(check_widening_axioms(&par).is_empty());
    assert!(check_narrowing_axioms(&par).is_empty());
    let boxes = sample_pairs(ibox(), N);
    assert!(check_widening_axioms(&boxes).is_empty());
    assert!(check_narrowing_axioms(&boxes).is_empty());
    // Powersets narrow by truncated glb.
    let sets = sample_pairs(iset(), N);
    let mut glb = GlbNarrowing::new(usize::MAX);
    assert!(check_narrowing_with(&sets, |a, b| glb.narrow(a, b)).is_empty());
    let bsets = sample_pairs(bset(), N);
    let mut glb = GlbNarrowing::new(usize::MAX);
    assert!(check_narrowing_with(&bsets, |a, b| glb.narrow(a, b)).is_empty());
}

#[test]
fn widening_cuts_increasing_chains() {
    use descend_core::lattice::{stabilizes, DEFAULT_MAX_STEPS};
    // 0, [0,1], [0,2], ... never stabilizes under lub but does under widening.
    let chain = || (0..200).map(|n| Interval::finite(0, n));
    assert!(stabilizes(chain(), |a, b| a.widen(&a.join(b)), DEFAULT_MAX_STEPS).unwrap() <= 2);
    assert!(stabilizes(chain(), |a, b| a.join(b), DEFAULT_MAX_STEPS).is_err());
    let big = |n: i64| Interval::singleton(&BigInt::from(n));
    assert_eq!(stabilizes([big(3), big(3)], |a, b| a.join(b), 4), Ok(0));
}

#[test]
fn glb_narrowing_truncates() {
    let mut n = GlbNarrowing::new(2);
    let a = Interval::finite(0, 100);
    let b = n.narrow(&a, &Interval::finite(0, 50));
    let c = n.narrow(&b, &Interval::finite(0, 10));
    let d = n.narrow(&c, &Interval::finite(0, 1));
    assert_eq!(c, Interval::finite(0, 10));
    assert_eq!(d, c);
    n.reset();
    assert_eq!(
        n.narrow(&c, &Interval::finite(0, 1)),
        Interval::finite(0, 1)
    );
}
