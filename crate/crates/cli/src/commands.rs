use std::sync::Arc;

use cobk_core::abelian::{rat, rational_string, CircleValue, FGAbelianGroup, GroupElement, Rational};
use cobk_core::chow_k0::{default_half_class, ChowClass, EllipticPoint, QuasilinearMap, CROSS_PAIRS};
use cobk_core::cob_biell::{
    fiber_glide, fiber_slide, grading_shift, is_cobordant, normal_form, section_relation, FormalSum, InvariantTuple,
    SectionBrane,
};
use cobk_core::cob_t2::{normal_form_t2, relation1, relation2, T2Class};
use cobk_core::homology::{compute_h2_twisted, compute_h3_twisted};
use cobk_core::mirror::verify_isomorphism;
use cobk_core::roitman::bound_trials;
use cobk_core::tropical::SectionClass;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::config::Config;
use crate::syntax::{parse_divisor, parse_sum, parse_t2_sum, parse_zero_cycle, print_sum, print_t2_sum};
use crate::CliError;

/// The outcome of a command: a JSON result, a text rendering, and whether every check passed.
pub struct Report {
    pub result: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn new(result: Value, text: String) -> Self {
        Report { result, text, ok: true }
    }
}

pub fn integer(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

pub fn rational(q: &Rational) -> Value {
    json!(rational_string(q))
}

pub fn circle(c: &CircleValue) -> Value {
    rational(c.value())
}

pub fn element(g: &GroupElement) -> Value {
    Value::Array(g.coords().iter().map(integer).collect())
}

pub fn point(p: &EllipticPoint) -> Value {
    json!({ "circle": circle(&p.circle), "g": element(&p.g) })
}

pub fn tuple(t: &InvariantTuple) -> Value {
    let c = &t.c;
    json!({
        "c": [integer(&c.a), integer(&c.b), integer(&c.m), integer(&c.n), c.l()],
        "g2": element(&t.g2),
        "a": [circle(&t.a.0), element(&t.a.1)],
        "a_prime": [circle(&t.a_prime.0), element(&t.a_prime.1)],
    })
}

pub fn t2_class(c: &T2Class) -> Value {
    json!({
        "homology": [integer(&c.homology.0), integer(&c.homology.1)],
        "flux": circle(&c.flux),
        "monodromy": element(&c.monodromy),
    })
}

pub fn chow_class(c: &ChowClass) -> Value {
    let d = &c.divisor;
    let z = &c.zero_cycle;
    let symbols: serde_json::Map<String, Value> = CROSS_PAIRS
        .iter()
        .zip(z.symbols())
        .filter(|(_, k)| k.sign() != num_bigint::Sign::NoSign)
        .map(|((i, j), k)| (format!("D{}.D{}", i + 1, j + 1), integer(k)))
        .collect();
    json!({
        "fundamental": integer(&c.fundamental),
        "divisor": {
            "d": [integer(&d.d1), integer(&d.d2), d.d3(), d.d4()],
            "pic0": point(&d.pic0),
        },
        "zero_cycle": {
            "degree": integer(&z.degree),
            "alb": point(&z.alb),
            "symbols": symbols,
            "tau": point(&z.tau),
        },
    })
}

pub fn normal_form_cmd(expr: &str, cfg: &Config) -> Result<Report, CliError> {
    let sum = parse_sum(expr, &cfg.group)?;
    let t = normal_form(&sum, &cfg.group);
    let mut result = tuple(&t);
    result["input"] = json!(print_sum(&sum));
    Ok(Report::new(result, t.to_string()))
}

pub fn cobordant_cmd(a: &str, b: &str, cfg: &Config) -> Result<Report, CliError> {
    let a = parse_sum(a, &cfg.group)?;
    let b = parse_sum(b, &cfg.group)?;
    let same = is_cobordant(&a, &b, &cfg.group);
    let diff = normal_form(&(&a - &b), &cfg.group);
    Ok(Report::new(json!({ "cobordant": same, "difference": tuple(&diff) }), same.to_string()))
}

pub fn homology_cmd() -> Result<Report, CliError> {
    let h2 = compute_h2_twisted()?;
    let (h3, _) = compute_h3_twisted()?;
    let generators: Vec<Value> = h2
        .generators
        .iter()
        .map(|(name, g)| json!({ "name": name.name(), "class": element(g) }))
        .collect();
    let text = format!(
        "H2 = {} (kernel {}, cokernel {})\nH3 = {}\n{}",
        h2.group,
        h2.kernel,
        h2.cokernel,
        h3,
        h2.generators.iter().map(|(n, g)| format!("{}: {}", n.name(), g)).collect::<Vec<_>>().join("\n")
    );
    let result = json!({
        "h2": h2.group.to_string(),
        "h2_kernel": h2.kernel.to_string(),
        "h2_cokernel": h2.cokernel.to_string(),
        "h3": h3.to_string(),
        "generators": generators,
    });
    Ok(Report::new(result, text))
}

pub fn t2_normal_form_cmd(expr: &str, cfg: &Config) -> Result<Report, CliError> {
    let sum = parse_t2_sum(expr, &cfg.group)?;
    let c = normal_form_t2(&sum, &cfg.group);
    let mut result = t2_class(&c);
    result["input"] = json!(print_t2_sum(&sum));
    Ok(Report::new(result, c.to_string()))
}

pub fn chern_cmd(rk: &str, c1: &str, c2: &str, cfg: &Config) -> Result<Report, CliError> {
    let rk = crate::syntax::parse_integer(rk)?;
    let c1 = parse_divisor(c1, &cfg.group)?;
    let c2 = parse_zero_cycle(c2, &cfg.group)?;
    let map = QuasilinearMap::bielliptic(cfg.table.clone())?;
    let c = map.chern(&rk, &c1, &c2)?;
    Ok(Report::new(chow_class(&c), c.to_string()))
}

fn standard_groups() -> Vec<Arc<FGAbelianGroup>> {
    vec![
        Arc::new(FGAbelianGroup::cyclic(2)),
        Arc::new(FGAbelianGroup::cyclic(4)),
        Arc::new(FGAbelianGroup::from_i64(1, &[2]).expect("valid")),
    ]
}

/// Runs on the configured group if the config names one, otherwise on `ℤ/2`, `ℤ/4`, `ℤ ⊕ ℤ/2`.
pub fn mirror_verify_cmd(cfg: &Config, random: usize) -> Result<Report, CliError> {
    let runs: Vec<(Arc<FGAbelianGroup>, EllipticPoint)> = if cfg.explicit_group {
        vec![(cfg.group.clone(), cfg.table.half_class().clone())]
    } else {
        standard_groups().into_iter().map(|g| (g.clone(), default_half_class(&g))).collect()
    };
    let mut groups = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for (g, half) in runs {
        let report = verify_isomorphism(&g, &half, cfg.seed, random)?;
        ok &= report.is_ok();
        lines.push(format!("{g}: {} checked, {} mismatches", report.checked, report.mismatches.len()));
        lines.extend(report.mismatches.iter().map(|m| format!("  {m}")));
        groups.push(json!({
            "group": g.to_string(),
            "checked": report.checked,
            "mismatches": report.mismatches,
        }));
    }
    Ok(Report { result: json!({ "ok": ok, "groups": groups }), text: lines.join("\n"), ok })
}

struct RelationCheck {
    name: &'static str,
    instances: usize,
    failures: usize,
}

impl RelationCheck {
    fn new(name: &'static str) -> Self {
        RelationCheck { name, instances: 0, failures: 0 }
    }

    fn record(&mut self, vanishes: bool) {
        self.instances += 1;
        if !vanishes {
            self.failures += 1;
        }
    }
}

fn grid() -> Vec<CircleValue> {
    [rat(0, 1), rat(1, 4), rat(1, 3), rat(1, 2)].into_iter().map(CircleValue::new).collect()
}

fn t2_zero(c: &T2Class) -> bool {
    c.homology.0 == BigInt::from(0) && c.homology.1 == BigInt::from(0) && c.flux.is_zero() && c.monodromy.is_identity()
}

/// Every relation family, checked on parameter grids with local systems from generators of `G`.
pub fn relations_check_cmd(cfg: &Config) -> Result<Report, CliError> {
    let g = &cfg.group;
    let gens: Vec<GroupElement> = (0..g.ngens()).map(|i| g.generator(i)).chain([g.identity()]).collect();
    let twos = g.two_torsion_elements();
    let vanishes = |s: &FormalSum| normal_form(s, g).is_zero();

    let mut r1 = RelationCheck::new("relation1T2");
    let mut r2 = RelationCheck::new("relation2T2");
    for a in grid() {
        for b in grid() {
            for theta in grid() {
                r1.record(t2_zero(&normal_form_t2(&relation1(&a, &b, &theta, g), g)));
            }
            r2.record(t2_zero(&normal_form_t2(&relation2(&a, &b, g), g)));
        }
    }

    let mut sections = RelationCheck::new("cobsectionstogenerators");
    let mut shift = RelationCheck::new("grading_shift");
    for m in -5..=5 {
        for n in -5..=5 {
            for l in 0..2 {
                for theta in grid() {
                    let class = SectionClass::from_i64(m, n, l, theta.value().clone());
                    for eta in &gens {
                        for eta2 in &twos {
                            let b = SectionBrane::new(class.clone(), 1, eta.clone(), eta2.clone())?;
                            sections.record(vanishes(&section_relation(&b)));
                            shift.record(vanishes(&grading_shift(&b)?));
                        }
                    }
                }
            }
        }
    }

    let mut f1 = RelationCheck::new("F1");
    let mut f1_twice = RelationCheck::new("2F1");
    let mut f2 = RelationCheck::new("F2");
    let mut f2_four = RelationCheck::new("4F2");
    for x in [rat(0, 1), rat(1, 4), rat(1, 3), rat(2, 3)] {
        for y in [rat(0, 1), rat(1, 5), rat(1, 2), rat(3, 4)] {
            for lx in &gens {
                for ly in &gens {
                    let glide = fiber_glide(x.clone(), y.clone(), lx, ly);
                    let slide = fiber_slide(x.clone(), y.clone(), lx, ly);
                    f1.record(vanishes(&glide));
                    f1_twice.record(vanishes(&glide.scale(&BigInt::from(2))));
                    f2.record(vanishes(&slide));
                    f2_four.record(vanishes(&slide.scale(&BigInt::from(4))));
                }
            }
        }
    }

    let checks = [r1, r2, sections, f1_twice, f2_four, f2, f1, shift];
    let ok = checks.iter().all(|c| c.failures == 0);
    let status = |c: &RelationCheck| if c.failures == 0 { "vanishes" } else { "fails" };
    let result = json!({
        "ok": ok,
        "group": g.to_string(),
        "relations": checks.iter().map(|c| json!({
            "name": c.name,
            "instances": c.instances,
            "failures": c.failures,
            "status": status(c),
        })).collect::<Vec<_>>(),
    });
    let text = checks.iter().map(|c| format!("{}: {} ({} instances)", c.name, status(c), c.instances)).collect::<Vec<_>>();
    Ok(Report { result, text: text.join("\n"), ok })
}

pub fn roitman_check_cmd(cfg: &Config, trials: usize) -> Result<Report, CliError> {
    let r = bound_trials(cfg.seed, trials)?;
    let ok = r.is_ok();
    let result = json!({
        "ok": ok,
        "seed": cfg.seed,
        "trials": r.trials,
        "violations": r.violations,
        "min_slack": r.min_slack,
        "tight_instances": r.tight_instances,
        "tight_failures": r.tight_failures,
    });
    let mut text = format!(
        "{} trials, {} violations, minimum slack {}\n{} symplectic-plane instances, {} not tight",
        r.trials,
        r.violations.len(),
        r.min_slack.map_or("-".to_string(), |s| s.to_string()),
        r.tight_instances,
        r.tight_failures.len()
    );
    for v in r.violations.iter().chain(&r.tight_failures) {
        text.push_str(&format!("\n  {v}"));
    }
    Ok(Report { result, text, ok })
}
