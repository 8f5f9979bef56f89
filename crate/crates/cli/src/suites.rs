use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::time::Instant;

use matschur::algebra::{
    cellular_dims, dual_cellular_dims, e1_quiver, first_noncommuting, left_idempotents, parse_relation, r_generators,
    rc_generators, right_idempotents, verify_relations, OperatorAlgebra, RelationError, E1_RELATIONS,
};
use matschur::bspace::{BElement, BSpace, GaleMap};
use matschur::checks::{self, Check};
use matschur::classes::{all_u_spaces, all_uc_spaces, ClassError, Subspace};
use matschur::facering::{generic_parameters, morse_decomposition_check, tilde_flats, FaceRingView, TildeFlatData};
use matschur::field::Field;
use matschur::matroid::Arrangement;
use matschur::schur::{all_um_spaces, bridge_check, edge_boundary_constant, Orientation, SchurMap};
use matschur::subset::Subset;
use serde_json::{json, Map, Value};

pub const SUITES: [&str; 7] = ["cellular", "gale", "schur", "adjoint", "starclosed", "facering", "quiver"];

pub fn labels(s: Subset) -> Value {
    json!(s.labels())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

/// Named check results with their details, in insertion order of names.
#[derive(Default)]
pub struct Checks {
    entries: BTreeMap<String, Value>,
    failed: bool,
}

impl Checks {
    pub fn record(&mut self, name: &str, status: Status, detail: Value) {
        let mut obj = match detail {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("detail".into(), other);
                m
            }
        };
        obj.insert("status".into(), json!(status.name()));
        self.failed |= status == Status::Fail;
        self.entries.insert(name.to_string(), Value::Object(obj));
    }

    pub fn record_check(&mut self, name: &str, check: Check) {
        match check {
            Ok(()) => self.record(name, Status::Pass, Value::Null),
            Err(msg) => self.record(name, Status::Fail, json!({ "reason": msg })),
        }
    }

    pub fn record_bool(&mut self, name: &str, ok: bool, detail: Value) {
        self.record(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn into_json(self) -> Value {
        Value::Object(self.entries.into_iter().collect())
    }
}

/// Per-field data shared between suites.
pub struct FieldContext<'a, K: Field> {
    pub k: K,
    pub sp: &'a BSpace,
    u: Vec<Subspace<K>>,
    uc: Result<Vec<Subspace<K>>, ClassError>,
    r: OnceCell<OperatorAlgebra<K>>,
    rc: OnceCell<OperatorAlgebra<K>>,
}

impl<'a, K: Field> FieldContext<'a, K> {
    pub fn new(k: K, sp: &'a BSpace) -> Result<Self, ClassError> {
        let u = all_u_spaces(&k, sp)?;
        let uc = all_uc_spaces(&k, sp, &u);
        Ok(FieldContext { k, sp, u, uc, r: OnceCell::new(), rc: OnceCell::new() })
    }

    pub fn u(&self) -> &[Subspace<K>] {
        &self.u
    }

    pub fn uc(&self) -> Result<&[Subspace<K>], String> {
        self.uc.as_deref().map_err(|e| e.to_string())
    }

    pub fn r(&self) -> &OperatorAlgebra<K> {
        self.r.get_or_init(|| {
            let gens = r_generators(&self.k, self.sp, &self.u).expect("U lies in B");
            OperatorAlgebra::generated_by(&self.k, self.sp.dim(), gens.into_iter().map(|g| g.matrix).collect())
        })
    }

    pub fn rc(&self) -> Result<&OperatorAlgebra<K>, String> {
        let uc = self.uc()?;
        Ok(self.rc.get_or_init(|| {
            let gens = rc_generators(&self.k, self.sp, uc).expect("Ǔ lies in B");
            OperatorAlgebra::generated_by(&self.k, self.sp.dim(), gens.into_iter().map(|g| g.matrix).collect())
        }))
    }
}

fn run_cellular<K: Field>(cx: &FieldContext<K>, out: &mut Checks) {
    let (k, sp) = (&cx.k, cx.sp);
    let udims: Vec<usize> = cx.u().iter().map(Subspace::dim).collect();
    let expected = cellular_dims(sp, &udims);
    let table = cx.r().block_dims(&left_idempotents(k, sp));
    out.record_bool(
        "r_blocks",
        table == expected,
        json!({ "dim": cx.r().dim(), "table": table, "expected": expected }),
    );
    match cx.rc() {
        Ok(rc) => {
            let ucdims: Vec<usize> = cx.uc().expect("checked").iter().map(Subspace::dim).collect();
            let expected = dual_cellular_dims(sp, &ucdims);
            let table = rc.block_dims(&right_idempotents(k, sp));
            out.record_bool(
                "rc_blocks",
                table == expected,
                json!({ "dim": rc.dim(), "table": table, "expected": expected }),
            );
            let left = r_generators(k, sp, cx.u()).expect("U lies in B");
            let right = rc_generators(k, sp, cx.uc().expect("checked")).expect("Ǔ lies in B");
            match first_noncommuting(k, &left, &right) {
                None => out.record("commute", Status::Pass, Value::Null),
                Some((a, b)) => out.record("commute", Status::Fail, json!({ "left": a, "right": b })),
            }
        }
        Err(e) => out.record("rc_blocks", Status::Fail, json!({ "reason": e })),
    }
}

fn run_gale<K: Field>(cx: &FieldContext<K>, out: &mut Checks) {
    let (k, sp) = (&cx.k, cx.sp);
    let dual_sp = match BSpace::build(&sp.arrangement().gale_dual()) {
        Ok(d) => d,
        Err(e) => return out.record("dual", Status::Fail, json!({ "reason": e.to_string() })),
    };
    let dual = match FieldContext::new(k.clone(), &dual_sp) {
        Ok(d) => d,
        Err(e) => return out.record("dual", Status::Fail, json!({ "reason": e.to_string() })),
    };
    let g = match GaleMap::new(sp, &dual_sp) {
        Ok(g) => g,
        Err(e) => return out.record("dual", Status::Fail, json!({ "reason": e.to_string() })),
    };
    match dual.rc() {
        Ok(rc) => {
            let ok = cx.r().conjugate(g.permutation()).same_as(rc);
            out.record_bool("r_to_dual_rc", ok, json!({ "dim": cx.r().dim(), "dual_dim": rc.dim() }));
        }
        Err(e) => out.record("r_to_dual_rc", Status::Fail, json!({ "reason": e })),
    }
    match cx.rc() {
        Ok(rc) => {
            let ok = rc.conjugate(g.permutation()).same_as(dual.r());
            out.record_bool("rc_to_dual_r", ok, json!({ "dim": rc.dim(), "dual_dim": dual.r().dim() }));
        }
        Err(e) => out.record("rc_to_dual_r", Status::Fail, json!({ "reason": e })),
    }
    // Observed sign ε with ⟨Γx, Γy⟩ = ε ⟨x, y⟩, per block. Only constancy
    // on the block is checked.
    let mut signs = Vec::new();
    let mut constant = true;
    for (b, blk) in sp.blocks().iter().enumerate() {
        let mut eps: Option<bool> = None;
        for p in blk.positions() {
            let x = BElement::monomial(k, p);
            let gx = BElement::monomial(k, g.apply_position(p));
            let (Ok(a), Ok(c)) = (sp.pairing(k, &x, &x), dual_sp.pairing(k, &gx, &gx)) else {
                constant = false;
                continue;
            };
            let same = a == c;
            constant &= eps.map_or(true, |e| e == same);
            eps = Some(same);
        }
        let mut v = block_key(sp, b);
        v.as_object_mut().expect("object").insert("epsilon".into(), json!(if eps == Some(false) { -1 } else { 1 }));
        signs.push(v);
    }
    out.record_bool("pairing_signs", constant, json!({ "blocks": signs }));
}

pub fn block_key(sp: &BSpace, b: usize) -> Value {
    let blk = &sp.blocks()[b];
    let p = sp.poset();
    json!({ "lower": labels(p.flat(blk.lower)), "upper": labels(p.flat(blk.upper)) })
}

fn run_schur<K: Field>(cx: &FieldContext<K>, out: &mut Checks) {
    let (k, sp) = (&cx.k, cx.sp);
    let orientation = match Orientation::new(sp) {
        Ok(o) => o,
        Err(e) => return out.record("orientation", Status::Fail, json!({ "reason": e.to_string() })),
    };
    match orientation.first_inconsistent_chain(sp) {
        Ok(None) => out.record("orientation_chains", Status::Pass, Value::Null),
        Ok(Some((d, e, f))) => {
            let p = sp.poset();
            out.record(
                "orientation_chains",
                Status::Fail,
                json!({ "chain": [labels(p.flat(d)), labels(p.flat(e)), labels(p.flat(f))] }),
            )
        }
        Err(e) => out.record("orientation_chains", Status::Fail, json!({ "reason": e.to_string() })),
    }
    let phi = SchurMap::new(sp, &orientation);
    let negative = phi.signs().iter().filter(|&&s| s < 0).count();
    out.record_bool(
        "phi_units",
        phi.signs().iter().all(|&s| s == 1 || s == -1),
        json!({ "positions": phi.signs().len(), "negative": negative }),
    );
    out.record_bool("ring_map", phi.is_multiplicative(sp), Value::Null);
    let um = all_um_spaces(k, sp);
    let bridge = bridge_check(k, sp, &phi, cx.u(), &um);
    let um_dims: Vec<usize> = um.iter().map(Subspace::dim).collect();
    out.record_bool("bridge", bridge.iter().all(|&b| b), json!({ "um_dims": um_dims }));
    let mut bad = Vec::new();
    let mut count = 0;
    for (b, blk) in sp.blocks().iter().enumerate() {
        for x in blk.minor.edges() {
            count += 1;
            let unit = match edge_boundary_constant(k, sp, &phi, b, x) {
                Ok(Some(c)) => c == k.one() || c == k.neg(&k.one()),
                _ => false,
            };
            if !unit {
                bad.push(json!({ "block": b, "edge": labels(x) }));
            }
        }
    }
    out.record_bool("edge_boundary", bad.is_empty(), json!({ "edges": count, "failures": bad }));
}

fn run_adjoint<K: Field>(cx: &FieldContext<K>, out: &mut Checks) {
    out.record_check("adjunctions", checks::adjunctions(&cx.k, cx.sp));
    out.record_check("pairing", checks::pairing_formula(&cx.k, cx.sp));
    out.record_check("gale_map", checks::gale_map(cx.sp));
}

fn run_starclosed<K: Field>(cx: &FieldContext<K>, out: &mut Checks) {
    out.record_check("associative", checks::star_associative(cx.sp));
    out.record_check("u_closed", checks::u_star_closed(&cx.k, cx.sp, cx.u()));
    out.record_check("edge_circuit", checks::edge_circuit_orthogonal(&cx.k, cx.sp));
    out.record_check("circuit_span", checks::circuit_products_span(&cx.k, cx.sp, cx.u()));
    out.record_check("uc_routes", cx.uc().map(|_| ()));
}

fn run_quiver<K: Field>(cx: &FieldContext<K>, out: &mut Checks) {
    let ops = match e1_quiver(&cx.k, cx.sp) {
        Ok(ops) => ops,
        Err(RelationError::WrongArrangement) => {
            return out.record("relations", Status::Skip, json!({ "reason": "only defined for the E1 example" }))
        }
        Err(e) => return out.record("relations", Status::Fail, json!({ "reason": e.to_string() })),
    };
    let rels: Vec<_> = E1_RELATIONS.iter().map(|r| parse_relation(r).expect("built-in relations parse")).collect();
    let outcomes = verify_relations(&cx.k, &ops, &rels).expect("all symbols bound");
    let detail: Vec<Value> = outcomes.iter().map(|o| json!({ "relation": o.text, "holds": o.holds })).collect();
    let in_r = ops.values().all(|m| cx.r().contains(m));
    out.record_bool("relations", outcomes.iter().all(|o| o.holds), json!({ "relations": detail }));
    out.record_bool("operators_in_r", in_r, Value::Null);
}

/// Runs field-dependent suites; returns the JSON object and the time per suite.
pub fn run_field_suites<K: Field>(cx: &FieldContext<K>, suites: &[&str]) -> (Value, bool, BTreeMap<String, u128>) {
    let mut obj = Map::new();
    let mut failed = false;
    let mut timings = BTreeMap::new();
    for &s in suites {
        let start = Instant::now();
        let mut out = Checks::default();
        match s {
            "cellular" => run_cellular(cx, &mut out),
            "gale" => run_gale(cx, &mut out),
            "schur" => run_schur(cx, &mut out),
            "adjoint" => run_adjoint(cx, &mut out),
            "starclosed" => run_starclosed(cx, &mut out),
            "quiver" => run_quiver(cx, &mut out),
            _ => continue,
        }
        timings.insert(s.to_string(), start.elapsed().as_millis());
        failed |= out.failed();
        obj.insert(s.to_string(), out.into_json());
    }
    (Value::Object(obj), failed, timings)
}

pub fn tilde_json(data: &TildeFlatData) -> Value {
    json!({
        "flat": labels(data.flat),
        "alpha": data.alpha.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "xi": data.xi.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "tilde": data.tilde.iter().map(|t| json!({
            "set": labels(t.set),
            "closure": labels(t.closure),
            "rank": t.rank(),
            "value": t.value.to_string(),
        })).collect::<Vec<_>>(),
    })
}

/// Runs the decomposition check for one flat.
pub fn facering_flat(view: &FaceRingView, data: &TildeFlatData) -> Result<(Value, bool), String> {
    let report = morse_decomposition_check(view, data).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "degree": 2 * r.degree,
                "ring": r.ring.to_string(),
                "ideals": r.ideals.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "predicted": r.predicted.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "union": r.union.to_string(),
                "holds": r.holds(),
            })
        })
        .collect();
    let overlapping: Vec<Value> = report.overlapping.iter().map(|(i, j)| json!([i, j])).collect();
    let mut v = tilde_json(data);
    let obj = v.as_object_mut().expect("object");
    obj.insert("rows".into(), json!(rows));
    obj.insert("overlapping".into(), json!(overlapping));
    obj.insert("status".into(), json!(if report.holds() { "pass" } else { "fail" }));
    Ok((v, report.holds()))
}

/// The field-independent face ring suite over every flat, with seeded
/// parameters.
pub fn run_facering(a: &Arrangement, cap: usize, seed: u64) -> (Value, bool) {
    let mut out = Checks::default();
    let view = match FaceRingView::new(a, cap) {
        Ok(v) => v,
        Err(e) => {
            out.record("hilbert", Status::Fail, json!({ "reason": e.to_string() }));
            return (out.into_json(), true);
        }
    };
    let h = view.hilbert();
    let shell = matschur::facering::shelling_hilbert(a, view.top());
    out.record_bool("hilbert", h == shell, json!({ "series": h.iter().map(ToString::to_string).collect::<Vec<_>>() }));
    let mut flats = Vec::new();
    let mut all_ok = true;
    for f in a.flats() {
        let res = generic_parameters(a, f, seed)
            .and_then(|(alpha, xi)| tilde_flats(a, f, &alpha, &xi))
            .map_err(|e| e.to_string())
            .and_then(|data| facering_flat(&view, &data));
        match res {
            Ok((v, ok)) => {
                all_ok &= ok;
                flats.push(v);
            }
            Err(e) => {
                all_ok = false;
                flats.push(json!({ "flat": labels(f), "status": "fail", "reason": e }));
            }
        }
    }
    out.record_bool("decomposition", all_ok, json!({ "flats": flats, "cap": cap }));
    let failed = out.failed();
    (out.into_json(), failed)
}
