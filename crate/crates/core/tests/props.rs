//! Randomized law checking across every shipped carrier: scalar quantale
//! laws, matrix category laws, predicate lattice laws, and the
//! triple/transformer bridge.

use proptest::prelude::*;

use quantrel::flow::{is_triple, sp, wlp};
use quantrel::relmat::{
    compose, identity, mjoin, mleq, mmeet, residual_left, residual_right, transpose,
};
use quantrel::subtype::{
    closure, cojoin, comeet, double_negation, interior, is_comonoid, is_monoid, negation,
};
use quantrel::sums::{make_sum, partition, sum_flatten};
use quantrel::{Comonoid, FinType, HeytingTable, Mat, QElem, Quantale};

/// The carriers the suite ranges over. The diamond lattice
/// (0 < a,b < 1 with a, b incomparable) exercises a non-chain case.
fn carrier(i: usize) -> Quantale {
    match i {
        0 => Quantale::boolean(),
        1 => Quantale::tropical(),
        2 => Quantale::natural(),
        3 => {
            let table = HeytingTable::new(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
            Quantale::heyting(table)
        }
        4 => {
            let table = HeytingTable::new(
                &["0", "a", "b", "1"],
                &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
            )
            .unwrap();
            Quantale::heyting(table)
        }
        _ => Quantale::language(["a", "b"]).unwrap(),
    }
}

const RESIDUATED: usize = 5; // carriers 0..5 support residuals and meets of empty families
const ALL: usize = 6; // carriers 0..6 include the word-set quantale

fn elem_strategy(i: usize) -> BoxedStrategy<QElem> {
    match i {
        0 => any::<bool>().prop_map(QElem::Bool).boxed(),
        1 => prop_oneof![
            Just(QElem::trop_inf()),
            (0u64..8).prop_map(QElem::trop_int),
            (0i64..12, 1i64..4).prop_map(|(n, d)| QElem::trop_ratio(n, d)),
        ]
        .boxed(),
        2 => prop_oneof![Just(QElem::nat_inf()), (0u64..8).prop_map(QElem::nat_int),].boxed(),
        3 => (0usize..3).prop_map(|k| QElem::Heyt(k)).boxed(),
        4 => (0usize..4).prop_map(|k| QElem::Heyt(k)).boxed(),
        _ => proptest::collection::vec(any::<bool>(), 5)
            .prop_map(|picks| {
                let universe = ["", "a", "b", "ab", "ba"];
                QElem::lang(
                    universe
                        .iter()
                        .zip(&picks)
                        .filter(|(_, &p)| p)
                        .map(|(w, _)| *w),
                )
            })
            .boxed(),
    }
}

fn scalar_triple(max_carrier: usize) -> impl Strategy<Value = (usize, QElem, QElem, QElem)> {
    (0..max_carrier).prop_flat_map(|i| {
        (
            Just(i),
            elem_strategy(i),
            elem_strategy(i),
            elem_strategy(i),
        )
    })
}

fn named_type(name: &str, size: usize) -> FinType {
    let labels: Vec<String> = (0..size).map(|k| format!("{name}{k}")).collect();
    FinType::new(name, &labels).unwrap()
}

fn mat_strategy(i: usize, src: FinType, dst: FinType) -> BoxedStrategy<Mat> {
    let cells = src.size() * dst.size();
    proptest::collection::vec(elem_strategy(i), cells)
        .prop_map(move |entries| {
            let mut it = entries.into_iter();
            Mat::build(&src, &dst, &carrier(i), |_, _| Ok(it.next().unwrap())).unwrap()
        })
        .boxed()
}

fn comonoid_strategy(i: usize, typ: FinType) -> BoxedStrategy<Comonoid> {
    let q = carrier(i);
    let idems = q.idempotents();
    let n = typ.size();
    proptest::collection::vec(0..idems.len(), n)
        .prop_map(move |picks| {
            let diag = picks.iter().map(|&k| idems[k].clone()).collect();
            Comonoid::new(&typ, &q, diag).unwrap()
        })
        .boxed()
}

/// (carrier index, Z→Y, Y→X, X→W) chains for associativity.
fn mat_chain() -> impl Strategy<Value = (usize, Mat, Mat, Mat)> {
    ((0..ALL), 1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(
        |(i, nz, ny, nx, nw)| {
            let z = named_type("Z", nz);
            let y = named_type("Y", ny);
            let x = named_type("X", nx);
            let w = named_type("W", nw);
            (
                Just(i),
                mat_strategy(i, z, y.clone()),
                mat_strategy(i, y, x.clone()),
                mat_strategy(i, x, w),
            )
        },
    )
}

proptest! {
    #[test]
    fn scalar_monoid_and_lattice_laws((i, a, b, c) in scalar_triple(ALL)) {
        let q = carrier(i);
        // Tensor is an associative monoid with the unit as identity.
        prop_assert_eq!(
            q.tensor(&a, &q.tensor(&b, &c).unwrap()).unwrap(),
            q.tensor(&q.tensor(&a, &b).unwrap(), &c).unwrap()
        );
        prop_assert_eq!(q.tensor(&q.unit(), &a).unwrap(), a.clone());
        prop_assert_eq!(q.tensor(&a, &q.unit()).unwrap(), a.clone());
        // Join/meet are commutative, associative, idempotent, absorbing.
        prop_assert_eq!(q.join(&a, &b).unwrap(), q.join(&b, &a).unwrap());
        prop_assert_eq!(q.meet(&a, &b).unwrap(), q.meet(&b, &a).unwrap());
        prop_assert_eq!(
            q.join(&a, &q.join(&b, &c).unwrap()).unwrap(),
            q.join(&q.join(&a, &b).unwrap(), &c).unwrap()
        );
        prop_assert_eq!(q.join(&a, &a).unwrap(), a.clone());
        prop_assert_eq!(q.meet(&a, &q.join(&a, &b).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(q.join(&a, &q.meet(&a, &b).unwrap()).unwrap(), a.clone());
        // Order agrees with join, and bottom is least.
        prop_assert_eq!(q.leq(&a, &b).unwrap(), q.join(&a, &b).unwrap() == b);
        prop_assert!(q.leq(&q.bottom(), &a).unwrap());
        // Tensor distributes over join and absorbs bottom.
        prop_assert_eq!(
            q.tensor(&a, &q.join(&b, &c).unwrap()).unwrap(),
            q.join(&q.tensor(&a, &b).unwrap(), &q.tensor(&a, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(q.tensor(&a, &q.bottom()).unwrap(), q.bottom());
        prop_assert_eq!(q.tensor(&q.bottom(), &a).unwrap(), q.bottom());
    }

    #[test]
    fn scalar_residual_galois((i, a, b, c) in scalar_triple(RESIDUATED)) {
        let q = carrier(i);
        // x ⊗ r ⪯ s ⟺ x ⪯ residual(s, r).
        prop_assert_eq!(
            q.leq(&q.tensor(&a, &b).unwrap(), &c).unwrap(),
            q.leq(&a, &q.residual(&c, &b).unwrap()).unwrap()
        );
        // Counit and unit of the adjunction.
        prop_assert!(q
            .leq(&q.tensor(&q.residual(&c, &b).unwrap(), &b).unwrap(), &c)
            .unwrap());
        prop_assert!(q
            .leq(&a, &q.residual(&q.tensor(&a, &b).unwrap(), &b).unwrap())
            .unwrap());
        // Top is the greatest element where representable.
        let top = q.top().unwrap();
        prop_assert!(q.leq(&a, &top).unwrap());
    }

    #[test]
    fn scalar_interior_is_the_largest_small_idempotent((i, a, _b, _c) in scalar_triple(ALL)) {
        let q = carrier(i);
        let e = q.scalar_interior(&a).unwrap();
        prop_assert!(q.is_idempotent(&e).unwrap());
        prop_assert!(q.leq(&e, &a).unwrap());
        prop_assert!(q.leq(&e, &q.unit()).unwrap());
        for d in q.idempotents() {
            if q.leq(&d, &a).unwrap() && q.leq(&d, &q.unit()).unwrap() {
                prop_assert!(q.leq(&d, &e).unwrap());
            }
        }
    }

    #[test]
    fn matrix_category_laws((i, s, r, t) in mat_chain()) {
        let q = carrier(i);
        // Associativity and identity laws of composition.
        prop_assert_eq!(
            compose(&compose(&s, &r).unwrap(), &t).unwrap(),
            compose(&s, &compose(&r, &t).unwrap()).unwrap()
        );
        prop_assert_eq!(compose(&identity(s.src(), &q), &s).unwrap(), s.clone());
        prop_assert_eq!(compose(&s, &identity(s.dst(), &q)).unwrap(), s.clone());
        // Transposition is an involution everywhere, and a contravariant
        // anti-homomorphism over the commutative carriers. Word
        // concatenation is not commutative, so the anti-homomorphism law
        // genuinely fails there and is not asserted.
        prop_assert_eq!(transpose(&transpose(&s)), s.clone());
        if q.kind() != "language" {
            prop_assert_eq!(
                transpose(&compose(&s, &r).unwrap()),
                compose(&transpose(&r), &transpose(&s)).unwrap()
            );
        }
        // Join/meet interaction with order.
        prop_assert!(mleq(&s, &mjoin(&s, &s).unwrap()).unwrap());
        prop_assert_eq!(mjoin(&s, &s).unwrap(), s.clone());
        prop_assert_eq!(mmeet(&s, &s).unwrap(), s.clone());
    }

    #[test]
    fn matrix_residual_galois(
        (_i, t, r, s) in ((0..RESIDUATED), 1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(
            |(i, nz, ny, nx)| {
                let z = named_type("Z", nz);
                let y = named_type("Y", ny);
                let x = named_type("X", nx);
                (
                    Just(i),
                    mat_strategy(i, z.clone(), y.clone()),
                    mat_strategy(i, y, x.clone()),
                    mat_strategy(i, z, x),
                )
            },
        )
    ) {
        // Right residual: t ⊗ r ⪯ s ⟺ t ⪯ residual_right(s, r).
        prop_assert_eq!(
            mleq(&compose(&t, &r).unwrap(), &s).unwrap(),
            mleq(&t, &residual_right(&s, &r).unwrap()).unwrap()
        );
        // Left residual: r ⊗ s' ⪯ t' ⟺ s' ⪯ residual_left(r, t'), with
        // t': Y→Z and s': X→Z built by transposition from the same data.
        let t_prime = transpose(&t);
        let s_prime = compose(&transpose(&r), &t_prime).unwrap();
        prop_assert_eq!(
            mleq(&compose(&r, &s_prime).unwrap(), &t_prime).unwrap(),
            mleq(&s_prime, &residual_left(&r, &t_prime).unwrap()).unwrap()
        );
        // Counit of the left adjunction.
        prop_assert!(mleq(
            &compose(&r, &residual_left(&r, &t_prime).unwrap()).unwrap(),
            &t_prime
        )
        .unwrap());
    }

    #[test]
    fn predicate_lattice_laws(
        (i, p, u, v) in ((0..ALL), 1usize..=3).prop_flat_map(|(i, n)| {
            let t = named_type("S", n);
            (
                Just(i),
                mat_strategy(i, t.clone(), t.clone()),
                comonoid_strategy(i, t.clone()),
                comonoid_strategy(i, t),
            )
        })
    ) {
        let q = carrier(i);
        // Interior: a comonoid below the endoterm.
        let e = interior(&p).unwrap();
        prop_assert!(is_comonoid(&e.as_mat()).unwrap());
        prop_assert!(mleq(&e.as_mat(), &p).unwrap());
        // Comeet/cojoin are the comonoid-lattice meet and join.
        prop_assert!(u.leq(&cojoin(&u, &v).unwrap()).unwrap());
        prop_assert!(comeet(&u, &v).unwrap().leq(&u).unwrap());
        // Negation is antitone and satisfies De Morgan.
        if u.leq(&v).unwrap() {
            prop_assert!(negation(&v).unwrap().leq(&negation(&u).unwrap()).unwrap());
        }
        prop_assert_eq!(
            negation(&cojoin(&u, &v).unwrap()).unwrap(),
            comeet(&negation(&u).unwrap(), &negation(&v).unwrap()).unwrap()
        );
        // Double negation is a closure operator with ¬¬¬ = ¬.
        let ddu = double_negation(&u).unwrap();
        prop_assert!(u.leq(&ddu).unwrap());
        prop_assert_eq!(
            negation(&ddu).unwrap(),
            negation(&u).unwrap()
        );
        // The meet of a predicate and its negation vanishes.
        prop_assert_eq!(
            comeet(&u, &negation(&u).unwrap()).unwrap(),
            Comonoid::bottom(u.typ(), &q)
        );
    }

    #[test]
    fn closure_is_a_monoid_closure_operator(
        (_i, p) in ((0..RESIDUATED), 1usize..=3).prop_flat_map(|(i, n)| {
            let t = named_type("S", n);
            (Just(i), mat_strategy(i, t.clone(), t))
        })
    ) {
        let c = closure(&p, 32).unwrap().into_mat();
        prop_assert!(is_monoid(&c).unwrap());
        prop_assert!(mleq(&p, &c).unwrap());
        prop_assert_eq!(closure(&c, 32).unwrap().into_mat(), c.clone());
    }

    #[test]
    fn triple_transformer_triangle(
        (_i, r, v, u) in ((0..ALL), 1usize..=3, 1usize..=3).prop_flat_map(|(i, ny, nx)| {
            let y = named_type("Y", ny);
            let x = named_type("X", nx);
            (
                Just(i),
                mat_strategy(i, y.clone(), x.clone()),
                comonoid_strategy(i, y),
                comonoid_strategy(i, x),
            )
        })
    ) {
        let holds = is_triple(&v, &r, &u).unwrap();
        prop_assert_eq!(holds, sp(&r, &v).unwrap().leq(&u).unwrap());
        prop_assert_eq!(holds, v.leq(&wlp(&r, &u).unwrap()).unwrap());
    }

    #[test]
    fn sum_round_trip(
        (i, r, na, nb) in ((0..ALL), 1usize..=3, 1usize..=3).prop_flat_map(|(i, na, nb)| {
            let a = named_type("A", na);
            let b = named_type("B", nb);
            let sum = make_sum("A+B", &[a, b], &carrier(i)).unwrap();
            let total = sum.total().clone();
            (Just(i), mat_strategy(i, total.clone(), total), Just(na), Just(nb))
        })
    ) {
        let a = named_type("A", na);
        let b = named_type("B", nb);
        let sum = make_sum("A+B", &[a, b], &carrier(i)).unwrap();
        let blocks = partition(&r, &sum, &sum).unwrap();
        prop_assert_eq!(sum_flatten(&blocks).unwrap(), r);
    }
}
