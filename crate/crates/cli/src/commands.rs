use std::collections::BTreeMap;
use std::time::Instant;

use matschur::algebra::{left_idempotents, radical, split_simple_dims, RadicalError};
use matschur::bspace::BSpace;
use matschur::classes::Subspace;
use matschur::facering::{check_alpha, check_xi, generic_parameters, parse_rational, tilde_flats, FaceRingView};
use matschur::field::{Field, FieldSpec, PrimeField};
use matschur::subset::Subset;
use matschur::with_field;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::input::{parse_labels, InputError, Instance};
use crate::suites::{block_key, facering_flat, labels, run_facering, run_field_suites, FieldContext, SUITES};

/// A report plus its exit code.
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    fn new(report: Value, failed: bool) -> Self {
        Outcome { report, code: i32::from(failed) }
    }
}

pub struct Options {
    pub fields: Vec<FieldSpec>,
    pub timings: bool,
}

impl Options {
    /// Fields from the command line, else from the file, else `q`.
    fn fields_for(&self, inst: &Instance) -> Vec<FieldSpec> {
        let mut f = if !self.fields.is_empty() {
            self.fields.clone()
        } else if !inst.fields.is_empty() {
            inst.fields.clone()
        } else {
            vec![FieldSpec::Rationals]
        };
        f.sort();
        f.dedup();
        f
    }
}

fn space(inst: &Instance) -> Result<BSpace, InputError> {
    BSpace::build(&inst.arrangement).map_err(|e| InputError::new("arrangement", e.to_string()))
}

fn instance_json(inst: &Instance) -> Value {
    let a = &inst.arrangement;
    json!({
        "name": inst.name,
        "elements": a.len(),
        "rank": a.rank_total(),
        "bases": a.bases().len(),
    })
}

fn poset_json(sp: &BSpace) -> Value {
    let p = sp.poset();
    let flats: Vec<Value> = p.flats().iter().map(|&f| labels(f)).collect();
    // E ≤ F means E ⊇ F.
    let order: Vec<Value> = p
        .comparable_pairs()
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| json!([labels(p.flat(a)), labels(p.flat(b))]))
        .collect();
    json!({ "cyclic_flats": flats, "order": order })
}

fn with_timing(mut report: Value, opts: &Options, timings: BTreeMap<String, u128>) -> Value {
    if opts.timings {
        report.as_object_mut().expect("object").insert("timings_ms".into(), json!(timings));
    }
    report
}

fn analyze_field<K: Field>(k: K, sp: &BSpace) -> (Value, bool) {
    let cx = match FieldContext::new(k, sp) {
        Ok(cx) => cx,
        Err(e) => return (json!({ "status": "fail", "reason": e.to_string() }), true),
    };
    let u: Vec<usize> = cx.u().iter().map(Subspace::dim).collect();
    let (uc, failed) = match cx.uc() {
        Ok(uc) => (json!(uc.iter().map(Subspace::dim).collect::<Vec<_>>()), false),
        Err(e) => (json!({ "status": "fail", "reason": e }), true),
    };
    (json!({ "u_dims": u, "uc_dims": uc }), failed)
}

pub fn analyze(inst: &Instance, opts: &Options) -> Result<Outcome, InputError> {
    let start = Instant::now();
    let sp = space(inst)?;
    let blocks: Vec<Value> = sp
        .blocks()
        .iter()
        .enumerate()
        .map(|(b, blk)| {
            let mut v = block_key(&sp, b);
            let o = v.as_object_mut().expect("object");
            o.insert("rank".into(), json!(blk.rank()));
            o.insert("bases".into(), json!(blk.dim()));
            o.insert("circuits".into(), json!(blk.minor.circuits().len()));
            v
        })
        .collect();
    let mut fields = Map::new();
    let mut failed = false;
    let mut timings = BTreeMap::new();
    for f in opts.fields_for(inst) {
        let t = Instant::now();
        let (v, bad) = with_field!(f, k => analyze_field(k, &sp));
        timings.insert(f.to_string(), t.elapsed().as_millis());
        failed |= bad;
        fields.insert(f.to_string(), v);
    }
    timings.insert("total".into(), start.elapsed().as_millis());
    let report = json!({
        "instance": instance_json(inst),
        "poset": poset_json(&sp),
        "b_dim": sp.dim(),
        "blocks": blocks,
        "fields": fields,
        "status": if failed { "fail" } else { "pass" },
    });
    Ok(Outcome::new(with_timing(report, opts, timings), failed))
}

pub struct VerifyOptions {
    pub suites: Vec<String>,
    pub degree: usize,
    pub seed: u64,
}

pub fn parse_suites(names: &[String]) -> Result<Vec<String>, InputError> {
    if names.is_empty() || names.iter().any(|s| s == "all") {
        return Ok(SUITES.iter().map(|s| s.to_string()).collect());
    }
    let mut out = Vec::new();
    for n in names.iter().flat_map(|s| s.split(',')) {
        let n = n.trim();
        if !SUITES.contains(&n) {
            return Err(InputError::new(
                "parse",
                format!("unknown suite `{n}`; expected one of {}", SUITES.join(", ")),
            ));
        }
        if !out.iter().any(|o| o == n) {
            out.push(n.to_string());
        }
    }
    Ok(out)
}

pub fn verify(inst: &Instance, opts: &Options, v: &VerifyOptions) -> Result<Outcome, InputError> {
    let sp = space(inst)?;
    let names: Vec<&str> = v.suites.iter().map(String::as_str).collect();
    let mut fields = Map::new();
    let mut failed = false;
    let mut timings = BTreeMap::new();
    let field_suites: Vec<&str> = names.iter().copied().filter(|s| *s != "facering").collect();
    if !field_suites.is_empty() {
        for f in opts.fields_for(inst) {
            let res = with_field!(f, k => FieldContext::new(k, &sp).map(|cx| run_field_suites(&cx, &field_suites)));
            match res {
                Ok((val, bad, t)) => {
                    failed |= bad;
                    fields.insert(f.to_string(), val);
                    for (s, ms) in t {
                        timings.insert(format!("{f}/{s}"), ms);
                    }
                }
                Err(e) => {
                    failed = true;
                    fields.insert(f.to_string(), json!({ "status": "fail", "reason": e.to_string() }));
                }
            }
        }
    }
    let mut report = json!({
        "instance": instance_json(inst),
        "suites": names,
        "fields": fields,
    });
    if names.contains(&"facering") {
        let t = Instant::now();
        let (val, bad) = run_facering(&inst.arrangement, v.degree, v.seed);
        timings.insert("facering".into(), t.elapsed().as_millis());
        failed |= bad;
        report.as_object_mut().expect("object").insert("facering".into(), val);
    }
    report.as_object_mut().expect("object").insert("status".into(), json!(if failed { "fail" } else { "pass" }));
    Ok(Outcome::new(with_timing(report, opts, timings), failed))
}

/// Parses `2,3,5`, rejecting anything that is not a prime.
pub fn parse_primes(s: &str) -> Result<Vec<u64>, InputError> {
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let p: u64 = t.parse().map_err(|_| InputError::new("field", format!("bad prime `{t}`")))?;
        PrimeField::new(p).map_err(|e| InputError::new("field", e.to_string()))?;
        out.push(p);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn semisimple_field<K: Field>(k: K, sp: &BSpace) -> Result<(Value, bool), String> {
    let cx = FieldContext::new(k, sp).map_err(|e| e.to_string())?;
    let alg = cx.r();
    let idem = left_idempotents(&cx.k, sp);
    match radical(alg, &idem) {
        Ok(rad) => {
            let u: Vec<usize> = cx.u().iter().map(Subspace::dim).collect();
            let mut v = json!({
                "semisimple": rad.dim() == 0,
                "algebra_dim": alg.dim(),
                "radical_dim": rad.dim(),
                "nilpotency": rad.nilpotency,
                "quotient_dim": rad.quotient_dim,
                "quotient_center_dim": rad.quotient_center_dim,
            });
            if rad.dim() == 0 {
                if let Some(d) = split_simple_dims(sp, &u, alg.dim()) {
                    v.as_object_mut().expect("object").insert("simple_dims".into(), json!(d));
                }
            }
            Ok((v, rad.dim() == 0))
        }
        Err(e @ RadicalError::Lift(_)) | Err(e @ RadicalError::BadIdempotents) => Err(e.to_string()),
        Err(e) => Ok((json!({ "postconditions": "fail", "reason": e.to_string() }), false)),
    }
}

pub fn semisimple(inst: &Instance, primes: &[u64], opts: &Options) -> Result<Outcome, InputError> {
    let sp = space(inst)?;
    let n = inst.arrangement.len() as u64;
    let mut verdicts = Map::new();
    let mut details = Map::new();
    let mut violations = Vec::new();
    let mut timings = BTreeMap::new();
    let mut specs: Vec<(String, FieldSpec)> = primes.iter().map(|&p| (p.to_string(), FieldSpec::Prime(p))).collect();
    specs.push(("Q".into(), FieldSpec::Rationals));
    for (key, f) in specs {
        let t = Instant::now();
        let res = with_field!(f, k => semisimple_field(k, &sp));
        timings.insert(key.clone(), t.elapsed().as_millis());
        match res {
            Ok((v, ss)) => {
                let char_ok = f.characteristic() == 0 || f.characteristic() > n;
                if v.get("postconditions").is_some() || (char_ok && !ss) {
                    violations.push(key.clone());
                }
                verdicts.insert(key.clone(), json!(ss));
                details.insert(key, v);
            }
            Err(e) => {
                violations.push(key.clone());
                details.insert(key, json!({ "reason": e }));
            }
        }
    }
    let failed = !violations.is_empty();
    let report = json!({
        "instance": instance_json(inst),
        "verdicts": verdicts,
        "details": details,
        "violations": violations,
        "status": if failed { "fail" } else { "pass" },
    });
    Ok(Outcome::new(with_timing(report, opts, timings), failed))
}

pub struct FaceringOptions {
    pub flat: Option<String>,
    pub alpha: Option<String>,
    pub xi: Option<String>,
    pub degree: usize,
    pub seed: u64,
}

fn subset_from_labels(inst: &Instance, s: &str) -> Result<Subset, InputError> {
    let n = inst.arrangement.len();
    let ls = parse_labels(s)?;
    if let Some(&bad) = ls.iter().find(|&&l| l > n) {
        return Err(InputError::new("parse", format!("element {bad} is outside 1..={n}")));
    }
    Ok(ls.iter().map(|l| l - 1).collect())
}

pub fn facering(inst: &Instance, f: &FaceringOptions, opts: &Options) -> Result<Outcome, InputError> {
    let a = &inst.arrangement;
    let start = Instant::now();
    if f.flat.is_none() && (f.alpha.is_some() || f.xi.is_some()) {
        return Err(InputError::new("parse", "--alpha and --xi need --flat"));
    }
    let Some(flat_text) = &f.flat else {
        let (val, failed) = run_facering(a, f.degree, f.seed);
        let report = json!({
            "instance": instance_json(inst),
            "facering": val,
            "status": if failed { "fail" } else { "pass" },
        });
        let timings = BTreeMap::from([("total".to_string(), start.elapsed().as_millis())]);
        return Ok(Outcome::new(with_timing(report, opts, timings), failed));
    };
    let flat = subset_from_labels(inst, flat_text)?;
    if !a.is_flat(flat) {
        return Err(InputError::new("parse", format!("{} is not a flat", json!(flat.labels()))));
    }
    let view = FaceRingView::new(a, f.degree).map_err(|e| InputError::new("parse", e.to_string()))?;
    let (mut alpha, mut xi) =
        generic_parameters(a, flat, f.seed).map_err(|e| InputError::new("parse", e.to_string()))?;
    if let Some(s) = &f.alpha {
        alpha = s
            .split(',')
            .map(|t| parse_rational(t.trim()).ok_or_else(|| InputError::new("parse", format!("bad rational `{t}`"))))
            .collect::<Result<_, _>>()?;
        if alpha.len() != a.len() {
            return Err(InputError::new("parse", format!("--alpha needs {} entries", a.len())));
        }
        check_alpha(a, &alpha).map_err(|e| InputError::new("parameters", e.to_string()))?;
    }
    if let Some(s) = &f.xi {
        xi = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|_| InputError::new("parse", format!("bad integer `{t}`"))))
            .collect::<Result<_, _>>()?;
        if xi.len() != a.len() {
            return Err(InputError::new("parse", format!("--xi needs {} entries", a.len())));
        }
        check_xi(a, flat, &xi).map_err(|e| InputError::new("parameters", e.to_string()))?;
    }
    let data = tilde_flats(a, flat, &alpha, &xi).map_err(|e| InputError::new("parameters", e.to_string()))?;
    let (val, ok) = facering_flat(&view, &data).map_err(|e| InputError::new("parameters", e))?;
    let report = json!({
        "instance": instance_json(inst),
        "facering": val,
        "status": if ok { "pass" } else { "fail" },
    });
    let timings = BTreeMap::from([("total".to_string(), start.elapsed().as_millis())]);
    Ok(Outcome::new(with_timing(report, opts, timings), !ok))
}

/// Analysis, every suite over `q` and `fp:2`, and the semisimplicity census
/// for the four-element example.
pub fn demo(opts: &Options) -> Outcome {
    let inst = Instance { name: "E1".into(), arrangement: matschur::corpus::e1(), fields: vec![] };
    let vopts = VerifyOptions { suites: SUITES.iter().map(|s| s.to_string()).collect(), degree: 10, seed: 0 };
    let fopts = Options {
        fields: if opts.fields.is_empty() {
            vec![FieldSpec::Rationals, FieldSpec::Prime(2)]
        } else {
            opts.fields.clone()
        },
        timings: opts.timings,
    };
    let parts = [
        ("analyze", analyze(&inst, &fopts)),
        ("verify", verify(&inst, &fopts, &vopts)),
        ("semisimple", semisimple(&inst, &[2, 3, 5], &fopts)),
    ];
    let mut report = Map::new();
    let mut code = 0;
    for (name, o) in parts {
        let o = o.expect("the bundled example is valid");
        code = code.max(o.code);
        report.insert(name.into(), o.report);
    }
    Outcome { report: Value::Object(report), code }
}

/// Verifies every instance; the report is keyed by instance name.
pub fn corpus(instances: &[Instance], opts: &Options, v: &VerifyOptions) -> Outcome {
    let mut report = Map::new();
    let mut code = 0;
    for inst in instances {
        let o = match verify(inst, opts, v) {
            Ok(o) => o,
            Err(e) => Outcome { report: e.to_json(), code: 2 },
        };
        code = code.max(o.code);
        report.insert(inst.name.clone(), o.report);
    }
    Outcome { report: json!({ "instances": report, "status": if code == 0 { "pass" } else { "fail" } }), code }
}
