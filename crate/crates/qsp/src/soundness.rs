//! Seeded property checks of the algebra engine: associativity, evaluation
//! order, Hopf axioms, multiplicativity of `Δ`, and weight-basis dimensions
//! against a rank computation in the free algebra.

use qsp_core::algebra::{counit, format_element, parse_element, words_of_weight, Element, Engine, Tensor};
use qsp_core::cartan::CartanDatum;
use qsp_core::{GaussRat, Result, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Counts of checked samples and the failures found.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub samples: usize,
    pub weights_checked: usize,
    pub failures: Vec<String>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A random element: up to three terms, each a small coefficient times a
/// word of at most two letters among `E_i`, `F_i`, `K_i^{±1}`.
pub fn random_element(eng: &Engine, rng: &mut ChaCha8Rng) -> Result<Element<Scalar>> {
    let n = eng.rank();
    let mut out = Element::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut c = &Scalar::from_int(rng.gen_range(1..=3)) * &Scalar::q_pow(rng.gen_range(-2..=2));
        if rng.gen_bool(0.5) {
            c = -c;
        }
        let mut t = Element::scalar(n, c);
        for _ in 0..rng.gen_range(0..=2) {
            let i = rng.gen_range(0..n);
            let g = match rng.gen_range(0..4) {
                0 => Element::e(n, i),
                1 => Element::f(n, i),
                2 => {
                    let mut b = vec![0; n];
                    b[i] = 1;
                    Element::k(&b)
                }
                _ => {
                    let mut b = vec![0; n];
                    b[i] = -1;
                    Element::k(&b)
                }
            };
            t = eng.mul(&t, &g)?;
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// `m ∘ (S ⊗ id)` (`left = true`) or `m ∘ (id ⊗ S)` on a two-fold tensor.
fn antipode_contract(eng: &Engine, t: &Tensor<Scalar>, left: bool) -> Result<Element<Scalar>> {
    let mut out = Element::zero();
    for (k, c) in &t.terms {
        let a = Element::mono(k[0].clone(), c.clone());
        let b = Element::mono(k[1].clone(), Scalar::one());
        let x = if left { eng.mul(&eng.antipode(&a)?, &b)? } else { eng.mul(&a, &eng.antipode(&b)?)? };
        out = out.add(&x);
    }
    Ok(out)
}

/// Checks `count` random triples in `U_q(g')` for `d`.
pub fn check_expressions(d: &CartanDatum, count: usize, seed: u64) -> Result<SoundnessReport> {
    let eng = Engine::new(d);
    let n = d.rank();
    let labels = &d.labels;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SoundnessReport::default();
    for s in 0..count {
        let a = random_element(&eng, &mut rng)?;
        let b = random_element(&eng, &mut rng)?;
        let c = random_element(&eng, &mut rng)?;
        let mut fail = |what: &str| rep.failures.push(format!("sample {s}: {what}"));
        let ab = eng.mul(&a, &b)?;
        let abc = eng.mul(&ab, &c)?;
        if abc != eng.mul(&a, &eng.mul(&b, &c)?)? {
            fail("associativity");
        }
        let text = format!("({}) ({}) ({})", format_element(&a, labels), format_element(&b, labels), format_element(&c, labels));
        let parsed = parse_element(&eng, &text)?.to_scalar_element();
        if parsed.as_ref() != Some(&abc) {
            fail("evaluation order");
        }
        let (da, db, dab) = (eng.coproduct(&a)?, eng.coproduct(&b)?, eng.coproduct(&ab)?);
        if dab != eng.tensor_mul(&da, &db)? {
            fail("coproduct multiplicativity");
        }
        if eng.coproduct_at(&dab, 0)? != eng.coproduct_at(&dab, 1)? {
            fail("coassociativity");
        }
        for slot in 0..2 {
            if qsp_core::algebra::tensor_to_element(&qsp_core::algebra::counit_at(&dab, slot)) != ab {
                fail("counit");
            }
        }
        let unit = Element::scalar(n, counit(&ab));
        if antipode_contract(&eng, &dab, true)? != unit || antipode_contract(&eng, &dab, false)? != unit {
            fail("antipode");
        }
        if eng.antipode(&ab)? != eng.mul(&eng.antipode(&b)?, &eng.antipode(&a)?)? {
            fail("antipode anti-multiplicativity");
        }
        rep.samples += 1;
    }
    Ok(rep)
}

/// Laurent expansion of the balanced q-binomial `[n k]_{q^d}` as
/// (exponent, integer coefficient) pairs, from Pascal's rule.
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

fn dense_rank(mut rows: Vec<Vec<GaussRat>>) -> usize {
    let mut r = 0;
    let ncols = rows.first().map_or(0, |x| x.len());
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
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

/// Rank of the two-sided Serre ideal at weight `mu` in the free algebra on
/// `E_1, …, E_n`, at the rational point `q = 3`.
pub fn free_algebra_ideal_rank(d: &CartanDatum, mu: &[i64]) -> usize {
    let n = d.rank();
    let words = words_of_weight(mu);
    let col = |w: &[u8]| words.iter().position(|x| x.as_slice() == w).expect("word of weight mu");
    let qv = GaussRat::from_int(3);
    let qpow = |e: i64| if e >= 0 { qv.pow(e as u32) } else { qv.pow((-e) as u32).inv().expect("nonzero") };
    let mut rows: Vec<Vec<GaussRat>> = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
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
    dense_rank(rows)
}

/// Compares `dim U^+_μ` with the free-algebra count for every `μ ≥ 0` of
/// height at most `max_height`.
pub fn check_weight_dimensions(d: &CartanDatum, max_height: usize, rep: &mut SoundnessReport) -> Result<()> {
    let eng = Engine::new(d);
    let n = d.rank();
    let mut layer = vec![vec![0i64; n]];
    for _ in 0..max_height {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for w in &layer {
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
            let dim = eng.weight_basis(mu)?.len();
            if dim + free_algebra_ideal_rank(d, mu) != total {
                rep.failures.push(format!("weight {mu:?}: engine dimension {dim}"));
            }
            rep.weights_checked += 1;
        }
        layer = next;
    }
    Ok(())
}

/// Both checks for one datum.
pub fn soundness(d: &CartanDatum, count: usize, seed: u64, max_height: usize) -> Result<SoundnessReport> {
    let mut rep = check_expressions(d, count, seed)?;
    check_weight_dimensions(d, max_height, &mut rep)?;
    Ok(rep)
}
