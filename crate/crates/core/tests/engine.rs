use qsp_core::algebra::{
    counit, counit_at, format_element, parse_element, project_p, project_pi, tensor_to_element, words_of_weight, Element, Engine, Mono,
};
use qsp_core::cartan::CartanDatum;
use qsp_core::scalar::{q_number, GaussRat, Scalar};
use qsp_core::{Coefficient, Error, ParamPoly};

fn sc(e: &Element<ParamPoly>) -> Element<Scalar> {
    e.to_scalar_element().unwrap()
}

fn parse(eng: &Engine, s: &str) -> Element<Scalar> {
    sc(&parse_element(eng, s).unwrap())
}

#[test]
fn f_times_e_straightens() {
    let d = CartanDatum::type_a(1);
    let eng = Engine::new(&d);
    let lhs = parse(&eng, "F1 E1");
    let rhs = parse(&eng, "E1 F1 - (K1 - K1^-1)/(q - q^-1)");
    assert_eq!(lhs, rhs);
    let mut expected = Element::<Scalar>::zero();
    expected.add_term(Mono { e: vec![0], k: vec![0], f: vec![0] }, Scalar::one());
    let inv = eng.inv_qdiff(0).clone();
    expected.add_term(Mono::k(&[1]), inv.neg());
    expected.add_term(Mono::k(&[-1]), inv);
    assert_eq!(lhs, expected);
}

#[test]
fn k_moves_past_e() {
    let d = CartanDatum::type_a(2);
    let eng = Engine::new(&d);
    let lhs = parse(&eng, "K[1,0] E2");
    assert_eq!(lhs, parse(&eng, "q^-1 E2 K[1,0]"));
    let lhs = parse(&eng, "F1 K[1,0]");
    assert_eq!(lhs, parse(&eng, "q^2 K[1,0] F1"));
}

#[test]
fn serre_relations_vanish() {
    let d = CartanDatum::type_a(2);
    let eng = Engine::new(&d);
    assert!(parse(&eng, "E1^2 E2 - (q + q^-1) E1 E2 E1 + E2 E1^2").is_zero());
    assert!(parse(&eng, "F1^2 F2 - (q + q^-1) F1 F2 F1 + F2 F1^2").is_zero());
    let b2 = CartanDatum::from_matrix(vec![vec![2, -2], vec![-1, 2]]).unwrap();
    let eng = Engine::new(&b2);
    for (i, j) in [(0usize, 1usize), (1, 0)] {
        let x = Element::<Scalar>::e(2, i);
        let y = Element::<Scalar>::e(2, j);
        assert!(eng.serre(i, j, &x, &y).unwrap().is_zero());
        let x = Element::<Scalar>::f(2, i);
        let y = Element::<Scalar>::f(2, j);
        assert!(eng.serre(i, j, &x, &y).unwrap().is_zero());
    }
}

#[test]
fn weight_basis_dimensions() {
    let eng = Engine::new(&CartanDatum::type_a(2));
    assert_eq!(eng.weight_basis(&[1, 0]).unwrap(), vec![vec![0u8]]);
    assert_eq!(eng.weight_basis(&[2, 1]).unwrap().len(), 2);
    let eng = Engine::new(&CartanDatum::affine_sl2());
    assert_eq!(eng.weight_basis(&[3, 1]).unwrap().len(), 3);
}

#[test]
fn height_cap_is_an_error() {
    let d = CartanDatum::type_a(2);
    let eng = Engine::with_options(&d, 3, false);
    let e = Element::<Scalar>::e(2, 0);
    let e2 = eng.mul(&e, &e).unwrap();
    let e3 = eng.mul(&e2, &Element::e(2, 1)).unwrap();
    assert!(matches!(eng.mul(&e3, &Element::e(2, 1)), Err(Error::HeightCapExceeded { .. })));
}

#[test]
fn hopf_basics() {
    let d = CartanDatum::type_a(2);
    let eng = Engine::new(&d);
    let f1 = Element::<Scalar>::f(2, 0);
    assert_eq!(eng.antipode(&f1).unwrap(), parse(&eng, "-F1 K1"));
    let e1 = Element::<Scalar>::e(2, 0);
    assert_eq!(eng.antipode(&e1).unwrap(), parse(&eng, "-K1^-1 E1"));
    let a = parse(&eng, "E1 E2 F1 + q K[1,-1] F2 F1 + E2");
    let d1 = eng.coproduct(&a).unwrap();
    assert_eq!(tensor_to_element(&counit_at(&d1, 0)), a);
    assert_eq!(tensor_to_element(&counit_at(&d1, 1)), a);
    let lhs = eng.coproduct_at(&d1, 0).unwrap();
    let rhs = eng.coproduct_at(&d1, 1).unwrap();
    assert_eq!(lhs, rhs);
    let b = parse(&eng, "F2 E1 + K2");
    let dab = eng.coproduct(&eng.mul(&a, &b).unwrap()).unwrap();
    let prod = eng.tensor_mul(&d1, &eng.coproduct(&b).unwrap()).unwrap();
    assert_eq!(dab, prod);
    let mut anti = qsp_core::algebra::Tensor::zero();
    for (k, c) in &d1.terms {
        let s = eng.antipode(&Element::mono(k[0].clone(), Scalar::one())).unwrap();
        for (m, x) in s.terms {
            anti.add_term(vec![m, k[1].clone()], c * &x);
        }
    }
    let lhs = eng.tensor_multiply(&anti).unwrap();
    assert_eq!(lhs, Element::scalar(2, counit(&a)));
}

#[test]
fn adjoint_examples() {
    let d = CartanDatum::type_a(2);
    let eng = Engine::new(&d);
    let u = parse(&eng, "E2 F1");
    assert_eq!(eng.adjoint(&parse(&eng, "K1"), &u).unwrap(), parse(&eng, "K1 E2 F1 K1^-1"));
    assert_eq!(eng.adjoint(&parse(&eng, "F2"), &parse(&eng, "E1")).unwrap(), Element::zero());
    assert_eq!(eng.adjoint(&parse(&eng, "F1"), &parse(&eng, "E1")).unwrap(), parse(&eng, "F1 E1 K1 - E1 F1 K1"));
    assert!(eng.adjoint(&parse(&eng, "E1"), &Element::one(2)).unwrap().is_zero());
}

#[test]
fn projections() {
    let d = CartanDatum::type_a(2);
    let eng = Engine::new(&d);
    let f1 = parse(&eng, "F1");
    assert_eq!(project_p(&[-1, 0], &f1), f1);
    let k = parse(&eng, "K[1,2]");
    assert_eq!(project_p(&[1, 2], &k), k);
    assert!(project_p(&[1, 1], &k).is_zero());
    let fe = parse(&eng, "F1 E1");
    let pi = project_pi(&[0, 0], &[0, 0], &fe);
    assert_eq!(pi, parse(&eng, "-(K1 - K1^-1)/(q - q^-1)"));
}

#[test]
fn printer_round_trips() {
    let d = CartanDatum::type_a(3);
    let eng = Engine::new(&d);
    let a = parse_element(&eng, "c2 (q^2+1)/(q-1) E1 E3 F2 - s1 K[1,-1,0] F3 F2 + 3 E2 E1 E2").unwrap();
    let s = format_element(&a, &d.labels);
    let b = parse_element(&eng, &s).unwrap();
    assert_eq!(a, b);
}

/// Rank of the Serre ideal span at a weight, computed over the free algebra
/// at the rational point `q = 3`.
fn oracle_ideal_rank(d: &CartanDatum, mu: &[i64]) -> usize {
    let n = d.rank();
    let words = words_of_weight(mu);
    let col = |w: &[u8]| words.iter().position(|x| x.as_slice() == w).unwrap();
    let qv = GaussRat::from_int(3);
    let qpow = |e: i64| if e >= 0 { qv.pow(e as u32) } else { qv.pow((-e) as u32).inv().unwrap() };
    let mut rows: Vec<Vec<GaussRat>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let m = 1 - d.a[i][j];
            let mut lam = vec![0i64; n];
            lam[i] = m;
            lam[j] += 1;
            if (0..n).any(|t| lam[t] > mu[t]) {
                continue;
            }
            let rest: Vec<i64> = (0..n).map(|t| mu[t] - lam[t]).collect();
            let rest_words = words_of_weight(&rest);
            let total = rest_words.first().map_or(0, |w| w.len());
            for rw in &rest_words {
                for split in 0..=total {
                    let mut row = vec![GaussRat::zero(); words.len()];
                    for k in 0..=m {
                        let mut coeff = GaussRat::zero();
                        for (e, c) in balanced_binomial(m, k, d.eps[i]) {
                            coeff = &coeff + &(&GaussRat::from_int(c) * &qpow(e));
                        }
                        if k % 2 == 1 {
                            coeff = -&coeff;
                        }
                        let mut w = rw[..split].to_vec();
                        w.extend(std::iter::repeat(i as u8).take((m - k) as usize));
                        w.push(j as u8);
                        w.extend(std::iter::repeat(i as u8).take(k as usize));
                        w.extend_from_slice(&rw[split..]);
                        let c = col(&w);
                        row[c] = &row[c] + &coeff;
                    }
                    rows.push(row);
                }
            }
        }
    }
    rank(rows)
}

/// Laurent expansion of the balanced q-binomial, as (exponent, coefficient).
fn balanced_binomial(n: i64, k: i64, d: i64) -> Vec<(i64, i64)> {
    fn rec(n: i64, k: i64) -> std::collections::BTreeMap<i64, i64> {
        let mut out = std::collections::BTreeMap::new();
        if k < 0 || k > n {
            return out;
        }
        if k == 0 || k == n {
            out.insert(0, 1);
            return out;
        }
        for (e, c) in rec(n - 1, k) {
            *out.entry(e + k).or_insert(0) += c;
        }
        for (e, c) in rec(n - 1, k - 1) {
            *out.entry(e - (n - k)).or_insert(0) += c;
        }
        out
    }
    rec(n, k).into_iter().map(|(e, c)| (e * d, c)).collect()
}

fn rank(mut rows: Vec<Vec<GaussRat>>) -> usize {
    let mut r = 0;
    let ncols = rows.first().map_or(0, |x| x.len());
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = &rows[k][c] * &inv;
                for t in 0..ncols {
                    let v = &rows[k][t] - &(&f * &rows[r][t]);
                    rows[k][t] = v;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn weight_basis_matches_free_algebra_oracle() {
    let data = [
        CartanDatum::type_a(2),
        CartanDatum::type_a(3),
        CartanDatum::affine_sl2(),
        CartanDatum::from_matrix(vec![vec![2, -2], vec![-1, 2]]).unwrap(),
        CartanDatum::from_matrix(vec![vec![2, -1], vec![-3, 2]]).unwrap(),
    ];
    for d in &data {
        let eng = Engine::new(d);
        let n = d.rank();
        let mut weights = vec![vec![0i64; n]];
        for _ in 0..5 {
            let mut next = Vec::new();
            for w in &weights {
                for i in 0..n {
                    let mut v = w.clone();
                    v[i] += 1;
                    if !next.contains(&v) {
                        next.push(v);
                    }
                }
            }
            for mu in &next {
                let total = words_of_weight(mu).len();
                let dim = eng.weight_basis(mu).unwrap().len();
                assert_eq!(dim, total - oracle_ideal_rank(d, mu), "weight {mu:?}");
            }
            weights = next;
        }
    }
}

#[test]
fn q_numbers_in_engine() {
    let d = CartanDatum::type_a(1);
    let eng = Engine::new(&d);
    let e = Element::<Scalar>::e(1, 0);
    let f = Element::<Scalar>::f(1, 0);
    let e2f = eng.mul(&eng.mul(&e, &e).unwrap(), &f).unwrap();
    let fe2 = eng.mul(&f, &eng.mul(&e, &e).unwrap()).unwrap();
    let diff = e2f.sub(&fe2);
    let expected = parse(&eng, "E1 (q K1 - q^-1 K1^-1)").scale_scalar(&q_number(2, 1)).scale_scalar(eng.inv_qdiff(0));
    assert_eq!(diff, expected);
    let _ = Coefficient::to_expr(&Scalar::one());
}
