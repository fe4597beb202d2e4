//! Verification suites over a coideal subalgebra, run case by case.

use qsp_core::algebra::{Element, Engine};
use qsp_core::cartan::unit;
use qsp_core::classical::{classical_theta, expected_b, involution_check, ClassicalElement, ClassicalEngine};
use qsp_core::maps::{theta_q, verify_morphism};
use qsp_core::qsp::{Qsp, QspParams};
use qsp_core::{Error, GaussRat, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Serre,
    Coideal,
    Presentation,
    Theta,
    Classical,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Serre, Suite::Coideal, Suite::Presentation, Suite::Theta, Suite::Classical];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Serre => "serre",
            Suite::Coideal => "coideal",
            Suite::Presentation => "presentation",
            Suite::Theta => "theta",
            Suite::Classical => "classical",
        }
    }
}

/// Outcome of one verification case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub suite: String,
    pub case: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

type Job<'a> = Box<dyn Fn() -> Result<CaseResult> + Send + Sync + 'a>;

fn case(suite: Suite, name: String, passed: bool, detail: Option<String>) -> CaseResult {
    CaseResult { suite: suite.name().into(), case: name, passed, detail }
}

fn jobs<'a>(q: &'a Qsp, suite: Suite) -> Vec<Job<'a>> {
    let p = q.pair();
    let n = q.rank();
    let l = &p.datum.labels;
    let mut out: Vec<Job<'a>> = Vec::new();
    match suite {
        Suite::Serre => {
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    let name = format!("({}, {})", l[i], l[j]);
                    out.push(Box::new(move || {
                        let defect = q.serre_defect(i, j)?;
                        let proj = q.p_lambda_vanishes(i, j)?;
                        let extracted = q.extract_c(i, j)?;
                        let (closed, detail) = match q.closed_c(i, j) {
                            Ok(c) => (c == extracted, None),
                            Err(Error::UnsupportedCase(m)) => (true, Some(format!("no closed formula: {m}"))),
                            Err(e) => return Err(e),
                        };
                        let detail = detail.or_else(|| (!defect.is_zero()).then(|| "nonzero defect".into()));
                        Ok(case(suite, name.clone(), defect.is_zero() && proj && closed, detail))
                    }));
                }
            }
        }
        Suite::Coideal => {
            for i in 0..n {
                let name = format!("B{}", l[i]);
                out.push(Box::new(move || {
                    let two_term = q.kow_bis(i)?;
                    let ok = q.coideal_check(i) && two_term != Some(false);
                    let detail = two_term.map(|_| "two-term coproduct".to_string());
                    Ok(case(suite, name.clone(), ok, detail))
                }));
            }
        }
        Suite::Presentation => {
            out.push(Box::new(move || {
                let pres = q.emit_presentation()?;
                let bad = q.verify_presentation(&pres)?;
                let detail = format!("{} relations, {} failing", pres.relations.len(), bad.len());
                Ok(case(suite, "relations".into(), bad.is_empty(), Some(detail)))
            }));
        }
        Suite::Theta => {
            out.push(Box::new(move || {
                let eng = Engine::new(&p.datum);
                let th = theta_q(&eng, p)?;
                let mut ok = verify_morphism(&eng, &th)?.is_empty();
                for i in 0..n {
                    let b = unit(n, i);
                    ok &= th.k_image(&b)? == Element::k(&p.theta(&b));
                }
                for &j in &p.x {
                    ok &= th.e[j] == Element::e(n, j) && th.f[j] == Element::f(n, j);
                }
                Ok(case(suite, "theta_q".into(), ok, None))
            }));
        }
        Suite::Classical => {
            out.push(Box::new(move || Ok(case(suite, "involution".into(), involution_check(p)?, None))));
            out.push(Box::new(move || {
                let params = if q.params.is_specializable() { q.params.clone() } else { QspParams::unit(p)? };
                let fallback = if params == q.params { None } else { Some(Qsp::new(params.clone())?) };
                let qq = fallback.as_ref().unwrap_or(q);
                let ce = ClassicalEngine::new(&p.datum);
                let th = classical_theta(&ce, &Engine::new(&p.datum), p)?;
                let mut ok = true;
                for i in 0..n {
                    let got = ce.specialize(qq.b(i))?;
                    let expect = if p.in_x(i) {
                        ClassicalElement::f(n, i)
                    } else {
                        let s1 = params.s[i].as_scalar().ok_or(Error::PoleAtOne)?.eval_at_one()?;
                        expected_b(&th, i, &GaussRat::one(), &s1)
                    };
                    ok &= got == expect;
                }
                let detail = fallback.is_some().then(|| "checked with c = 1, s = 0".to_string());
                Ok(case(suite, "specialized generators".into(), ok, detail))
            }));
        }
    }
    out
}

/// Runs the suites, fanning the cases out over threads; results come back
/// in canonical order.
pub fn run_suites(q: &Qsp, suites: &[Suite], threads: usize) -> Result<Vec<CaseResult>> {
    let all: Vec<Job<'_>> = suites.iter().flat_map(|&s| jobs(q, s)).collect();
    let threads = threads.max(1).min(all.len().max(1));
    let mut slots: Vec<Option<Result<CaseResult>>> = vec![None; all.len()];
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|sc| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                sc.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if k >= all.len() {
                            break;
                        }
                        done.push((k, all[k]()));
                    }
                    done
                })
            })
            .collect();
        for h in handles {
            for (k, r) in h.join().expect("worker panicked") {
                slots[k] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every case ran")).collect()
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(8)
}
