//! Command-line front end: JSON in, JSON (or plain text) out.
//!
//! Inputs are JSON documents. Matrices are arrays of columns of polynomial
//! strings, or objects `{"rows": ...}` / `{"columns": ...}`; any object with a
//! `"result"` field is unwrapped first, so one command's output can be fed
//! to the next.

use std::fmt::Write as _;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{buchberger_traced, grem_traced, is_ghnf, GroebnerOptions, LatticeVector, PolyMatrix, ZxLattice};
use crate::order_bound::{jacobi_number, order_bound, ExtNatMatrix};
use crate::poly::{ExtNat, IntPoly};
use crate::saturation::{is_toric_lattice, sat_zx, z_factor, zx_factor, SaturationWitness};
use crate::semimodule::{enumerate_faces, face_saturated_necessary, is_pointed, Semimodule, SemimoduleBounds};
use crate::syzygy::{implicitize, lattice_intersection, orth_complement, parametrize, syzygy_ghnf, MonomialMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Reduced Gröbner basis in generalized Hermite normal form
    Ghnf,
    /// Check the GHNF conditions on a matrix
    IsGhnf,
    /// Lattice membership: {"vector": [...], "lattice": [[...], ...]}
    Member,
    /// Decide whether a lattice is toric (Z[x]-saturated)
    IsToric,
    /// Z[x]-saturation with its multiplier chain
    Saturate,
    /// Integer saturation witnesses
    Zfactor,
    /// Saturation witnesses (integer first, then polynomial)
    Zxfactor,
    /// Syzygy lattice of a matrix
    Syzygy,
    /// Orthogonal complement of a lattice
    Complement,
    /// Intersection: {"left": [...], "right": [...]}
    Intersect,
    /// Binomial equations of a monomial map
    Implicitize,
    /// Monomial map of a toric lattice
    Parametrize,
    /// Faces of a semimodule: {"generators": [...]}
    Faces,
    /// Pointedness of a semimodule
    IsPointed,
    /// Face-saturation necessary condition: {"generators": [...], "face": [indices]}
    FaceSat,
    /// Jacobi number of a square matrix over N and "-inf"
    Jacobi,
    /// Order bound of a monomial map
    OrderBound,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Pretty,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub format: Format,
    pub verify: bool,
    pub degree_bound: Option<usize>,
    pub coeff_bound: Option<u64>,
    pub subset_cap: Option<usize>,
    pub saturate_first: bool,
}

impl Options {
    fn bounds(&self) -> SemimoduleBounds {
        let mut b = SemimoduleBounds { degree_bound: self.degree_bound, coeff_bound: self.coeff_bound, ..Default::default() };
        if let Some(c) = self.subset_cap {
            b.subset_cap = c;
        }
        b
    }
}

/// Exact computations for toric difference varieties.
#[derive(Debug, Parser)]
#[command(name = "difftoric", version)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Input file, inline JSON, or `-`/absent for stdin
    pub input: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Re-check every certificate before printing
    #[arg(long)]
    pub verify: bool,
    /// Certificate degree bound for semimodule membership
    #[arg(long)]
    pub degree_bound: Option<usize>,
    /// Coefficient bound for semimodule membership
    #[arg(long)]
    pub coeff_bound: Option<u64>,
    /// Largest generator count for face enumeration
    #[arg(long)]
    pub subset_cap: Option<usize>,
    /// Saturate a non-toric lattice before parametrizing
    #[arg(long)]
    pub saturate_first: bool,
}

impl Args {
    pub fn options(&self) -> Options {
        Options {
            format: self.format,
            verify: self.verify,
            degree_bound: self.degree_bound,
            coeff_bound: self.coeff_bound,
            subset_cap: self.subset_cap,
            saturate_first: self.saturate_first,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    pub input: String,
    pub options: Options,
}

#[derive(Clone, Debug, Serialize)]
pub struct Response {
    pub status: &'static str,
    pub command: Command,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Value>,
    #[serde(skip)]
    pub text: String,
}

/// Printed output and process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

pub fn run(req: &Request) -> Outcome {
    match dispatch(req) {
        Ok(resp) => {
            let output = match req.options.format {
                Format::Json => serde_json::to_string_pretty(&resp).expect("serializable") + "\n",
                Format::Pretty => resp.text,
            };
            Outcome { code: 0, output }
        }
        Err(e) => Outcome { code: e.exit_code(), output: error_json(&e) },
    }
}

pub fn error_json(e: &Error) -> String {
    let mut v = json!({ "status": "error", "kind": e.kind(), "code": e.exit_code(), "message": e.to_string() });
    if let Error::NotToric(verdict) = e {
        v["verdict"] = serde_json::to_value(verdict).expect("serializable");
    }
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn parse_json(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse { input: "JSON input".into(), message: e.to_string() })?;
    Ok(unwrap_result(v))
}

fn unwrap_result(v: Value) -> Value {
    match v {
        Value::Object(mut m) if m.contains_key("result") => unwrap_result(m.remove("result").expect("checked")),
        v => v,
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| invalid(format!("missing field {key:?}")))
}

fn poly(v: &Value) -> Result<IntPoly> {
    match v {
        Value::String(s) => IntPoly::parse(s),
        Value::Number(n) => IntPoly::parse(&n.to_string()),
        other => Err(invalid(format!("expected a polynomial, found {other}"))),
    }
}

fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| invalid(format!("expected an array, found {v}")))
}

fn vector(v: &Value) -> Result<LatticeVector> {
    Ok(LatticeVector::new(array(v)?.iter().map(poly).collect::<Result<_>>()?))
}

/// Columns of a matrix: an array of columns, `{"columns": ...}` or `{"rows": ...}`.
fn matrix(v: &Value) -> Result<PolyMatrix> {
    if let Some(rows) = v.get("rows") {
        let rows = array(rows)?
            .iter()
            .map(|r| array(r)?.iter().map(poly).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        return PolyMatrix::from_rows(rows);
    }
    let cols = v.get("columns").unwrap_or(v);
    let cols = array(cols)?.iter().map(vector).collect::<Result<Vec<_>>>()?;
    let n = cols.first().map(LatticeVector::dim).ok_or_else(|| Error::ZeroInput("matrix without columns".into()))?;
    PolyMatrix::from_columns(n, cols)
}

fn lattice(v: &Value) -> Result<ZxLattice> {
    let m = matrix(v)?;
    ZxLattice::new(m.nrows(), m.into_columns())
}

fn semimodule(v: &Value) -> Result<Semimodule> {
    let gens = v.get("generators").unwrap_or(v);
    Semimodule::from_generators(array(gens)?.iter().map(vector).collect::<Result<_>>()?)
}

fn ext_matrix(v: &Value) -> Result<ExtNatMatrix> {
    let rows = array(v)?
        .iter()
        .map(|r| {
            array(r)?
                .iter()
                .map(|e| serde_json::from_value::<ExtNat>(e.clone()).map_err(|err| invalid(format!("bad entry {e}: {err}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ExtNatMatrix::new(rows)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(what.into()))
    }
}

fn column_lines(cols: &[LatticeVector]) -> String {
    cols.iter().map(|c| format!("  {c}\n")).collect()
}

fn witness_lines(ws: &[SaturationWitness]) -> String {
    ws.iter().map(|w| format!("  h = {}, p = {}\n", w.h, w.multiplier)).collect()
}

fn verify_witnesses(ws: &[SaturationWitness], l: &ZxLattice) -> Result<()> {
    let b = l.ghnf()?;
    check(ws.iter().all(|w| w.verify(b)), "saturation witness")
}

fn ok(command: Command, result: Value, certificates: Option<Value>, text: String) -> Result<Response> {
    Ok(Response { status: "ok", command, result, certificates, text })
}

fn dispatch(req: &Request) -> Result<Response> {
    let input = parse_json(&req.input)?;
    let opts = &req.options;
    let cmd = req.command;
    match cmd {
        Command::Ghnf => {
            let gens = matrix(&input)?.into_columns();
            let traced = buchberger_traced(&gens, &GroebnerOptions::default())?;
            let cols = traced.basis.columns();
            if opts.verify {
                check(is_ghnf(cols).is_ghnf(), "GHNF conditions")?;
                check(gens.iter().all(|g| traced.basis.contains(g)), "inputs reduce to zero")?;
                for (col, tr) in cols.iter().zip(&traced.trace) {
                    let back = gens.iter().zip(tr).fold(LatticeVector::zero(col.dim()), |acc, (g, c)| &acc + &g.mul_poly(c));
                    check(&back == col, "trace reconstructs column")?;
                }
            }
            let blocks: Vec<Value> =
                traced.basis.blocks().iter().map(|b| json!({ "row": b.row + 1, "size": b.columns.len() })).collect();
            let text = format!("GHNF ({} columns):\n{}", cols.len(), column_lines(cols));
            ok(cmd, json!({ "columns": cols, "blocks": blocks }), Some(json!({ "trace": traced.trace })), text)
        }
        Command::IsGhnf => {
            let c = is_ghnf(matrix(&input)?.columns());
            let mut text = format!("is GHNF: {}\n", c.is_ghnf());
            for v in &c.violations {
                let _ = writeln!(text, "  {v}");
            }
            ok(cmd, json!({ "is_ghnf": c.is_ghnf(), "conditions": c.conditions, "violations": c.violations }), None, text)
        }
        Command::Member => {
            let f = vector(field(&input, "vector")?)?;
            let l = lattice(field(&input, "lattice")?)?;
            if f.dim() != l.dim() {
                return Err(Error::DimensionMismatch { expected: l.dim(), found: f.dim() });
            }
            let basis = l.ghnf()?;
            let (rem, cof) = grem_traced(&f, basis.columns());
            if opts.verify {
                let back = basis.columns().iter().zip(&cof).fold(rem.clone(), |acc, (b, c)| &acc + &b.mul_poly(c));
                check(back == f, "membership cofactors")?;
            }
            let member = rem.is_zero();
            let text = format!("member: {member}\nremainder: {rem}\n");
            let cert = json!({ "basis": basis.columns(), "cofactors": cof });
            ok(cmd, json!({ "member": member, "remainder": rem }), Some(cert), text)
        }
        Command::IsToric => {
            let l = lattice(&input)?;
            let v = is_toric_lattice(&l)?;
            if opts.verify {
                verify_witnesses(&v.witnesses, &l)?;
                check(v.saturated_lattice.contains_lattice(&l)?, "saturation contains input")?;
            }
            let text = format!("toric: {}\n{}", v.is_toric, witness_lines(&v.witnesses));
            ok(cmd, to_value(&v), None, text)
        }
        Command::Saturate => {
            let l = lattice(&input)?;
            let sat = sat_zx(&l)?;
            let q = sat.certificate_multiplier();
            let cols = sat.lattice.ghnf()?.columns().to_vec();
            if opts.verify {
                for g in &cols {
                    check(l.member(&g.mul_poly(&q))?, "multiplier chain")?;
                }
                check(zx_factor(sat.lattice.ghnf()?)?.is_empty(), "result is saturated")?;
            }
            let rounds: Vec<Value> =
                sat.rounds.iter().map(|r| json!({ "witnesses": r.witnesses, "multiplier": r.multiplier })).collect();
            let text = format!(
                "saturation ({} growth rounds, multiplier {q}):\n{}",
                sat.growth_rounds(),
                column_lines(&cols)
            );
            let cert = json!({ "rounds": rounds, "multiplier": q });
            ok(cmd, json!({ "columns": cols, "growth_rounds": sat.growth_rounds() }), Some(cert), text)
        }
        Command::Zfactor | Command::Zxfactor => {
            let l = lattice(&input)?;
            let ws = if cmd == Command::Zfactor { z_factor(l.ghnf()?)? } else { zx_factor(l.ghnf()?)? };
            if opts.verify {
                verify_witnesses(&ws, &l)?;
            }
            let text = format!("{} witness(es):\n{}", ws.len(), witness_lines(&ws));
            ok(cmd, json!({ "witnesses": ws }), None, text)
        }
        Command::Syzygy => {
            let a = matrix(&input)?;
            let syz = syzygy_ghnf(&a)?;
            if opts.verify {
                for s in syz.columns() {
                    check(a.mul_vec(s)?.is_zero(), "A f = 0")?;
                }
            }
            let text = format!("syzygies:\n{}", column_lines(syz.columns()));
            ok(cmd, json!({ "columns": syz.columns() }), None, text)
        }
        Command::Complement => {
            let l = lattice(&input)?;
            let c = orth_complement(&l)?;
            let cols = c.ghnf()?.columns().to_vec();
            if opts.verify {
                for f in &cols {
                    check(l.generators().iter().all(|g| f.dot(g).is_zero()), "orthogonality")?;
                }
            }
            let text = format!("complement:\n{}", column_lines(&cols));
            ok(cmd, json!({ "columns": cols }), None, text)
        }
        Command::Intersect => {
            let l1 = lattice(field(&input, "left")?)?;
            let l2 = lattice(field(&input, "right")?)?;
            let i = lattice_intersection(&l1, &l2)?;
            let cols = i.ghnf()?.columns().to_vec();
            if opts.verify {
                for f in &cols {
                    check(l1.member(f)? && l2.member(f)?, "intersection membership")?;
                }
            }
            let text = format!("intersection:\n{}", column_lines(&cols));
            ok(cmd, json!({ "columns": cols }), None, text)
        }
        Command::Implicitize => {
            let a = matrix(&input)?;
            let imp = implicitize(&MonomialMap::from_matrix(&a))?;
            if opts.verify {
                for b in &imp.binomials {
                    check(a.mul_vec(&b.source)?.is_zero() && &b.plus - &b.minus == b.source, "binomial exponents")?;
                }
            }
            let strings: Vec<String> = imp.binomials.iter().map(|b| b.display()).collect();
            let mut text = format!("dimension {}\n", imp.dimension);
            for s in &strings {
                let _ = writeln!(text, "  {s}");
            }
            let result = json!({
                "binomials": strings,
                "lattice": imp.lattice.generators(),
                "dimension": imp.dimension,
            });
            ok(cmd, result, None, text)
        }
        Command::Parametrize => {
            let l = lattice(&input)?;
            let p = parametrize(l.generators(), opts.saturate_first)?;
            if opts.verify {
                let target = match &p.saturated_from {
                    Some(v) => v.saturated_lattice.clone(),
                    None => l.clone(),
                };
                let back = implicitize(&p.map)?;
                check(back.lattice.same_as(&target)?, "parametrization round trip")?;
            }
            let mut text = String::from("exponent vectors:\n");
            text += &column_lines(p.map.exponents());
            let result = json!({
                "columns": p.map.exponents(),
                "torus_dim": p.map.dim(),
                "saturated": p.saturated_from.is_some(),
            });
            ok(cmd, result, Some(json!({ "complement": p.complement.columns() })), text)
        }
        Command::Faces => {
            let s = semimodule(&input)?;
            let faces = enumerate_faces(&s, &opts.bounds())?;
            let mut text = format!("{} face(s):\n", faces.len());
            for f in &faces {
                let gens: Vec<String> = f.generators.iter().map(ToString::to_string).collect();
                let mark = if f.confirmed { "" } else { " (unconfirmed)" };
                let _ = writeln!(text, "  {:?} {{{}}}{mark}", f.indices, gens.join(", "));
            }
            ok(cmd, json!({ "faces": faces }), None, text)
        }
        Command::IsPointed => {
            let s = semimodule(&input)?;
            let p = is_pointed(&s, &opts.bounds())?;
            if opts.verify {
                if let Some(w) = &p.witness {
                    let b = SemimoduleBounds::default();
                    let both = crate::semimodule::ss_member(w, &s, &b)?.is_yes()
                        && crate::semimodule::ss_member(&-w, &s, &b)?.is_yes();
                    check(both, "pointedness witness")?;
                }
            }
            let verdict = p.pointed.map_or("unknown".to_string(), |b| b.to_string());
            ok(cmd, to_value(&p), None, format!("pointed: {verdict}\n"))
        }
        Command::FaceSat => {
            let s = semimodule(&input)?;
            let face: Vec<usize> = serde_json::from_value(field(&input, "face")?.clone())
                .map_err(|e| invalid(format!("face must be a list of generator indices: {e}")))?;
            let r = face_saturated_necessary(&s, &face)?;
            if opts.verify {
                if let Some(w) = &r.witness {
                    check(!s.sub(&face)?.lattice().member(w)? && s.lattice().member(w)?, "face-saturation witness")?;
                }
            }
            let mut text = format!("necessary condition holds: {}\n", r.holds);
            if let Some(w) = &r.witness {
                let _ = writeln!(text, "witness: {w}");
            }
            ok(cmd, to_value(&r), None, text)
        }
        Command::Jacobi => {
            let m = ext_matrix(&input)?;
            let j = jacobi_number(&m);
            if opts.verify && m.size() <= 8 {
                check(brute_force_jacobi(&m) == j, "permutation brute force")?;
            }
            ok(cmd, json!({ "jacobi": j }), None, format!("{j}\n"))
        }
        Command::OrderBound => {
            let a = matrix(&input)?;
            let r = order_bound(&MonomialMap::from_matrix(&a))?;
            let mut text = String::new();
            for (i, row) in r.rows.iter().enumerate() {
                let _ = writeln!(text, "  t{}: o = {}, o_low = {}", i + 1, row.o, row.o_low);
            }
            let _ = writeln!(text, "bound: {}", r.bound);
            ok(cmd, to_value(&r), None, text)
        }
    }
}

/// Maximum diagonal sum over all permutations.
pub fn brute_force_jacobi(m: &ExtNatMatrix) -> ExtNat {
    fn go(m: &ExtNatMatrix, row: usize, used: &mut Vec<bool>, acc: ExtNat, best: &mut ExtNat) {
        if row == m.size() {
            *best = (*best).max(acc);
            return;
        }
        for j in 0..m.size() {
            if !used[j] {
                used[j] = true;
                go(m, row + 1, used, acc + m.get(row, j), best);
                used[j] = false;
            }
        }
    }
    let mut best = ExtNat::NegInf;
    go(m, 0, &mut vec![false; m.size()], ExtNat::Fin(0), &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(command: Command, input: &str) -> (i32, Value) {
        let out = run(&Request { command, input: input.into(), options: Options { verify: true, ..Default::default() } });
        (out.code, serde_json::from_str(&out.output).unwrap())
    }

    #[test]
    fn implicitize_example() {
        let (code, v) = run_json(Command::Implicitize, r#"{"rows": [["2","x-1","0","0"],["0","0","2","x-1"]]}"#);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["binomials"], json!(["y1*y2^2 - y1^x", "y3*y4^2 - y3^x"]));
    }

    #[test]
    fn zxfactor_example() {
        let (code, v) = run_json(Command::Zxfactor, r#"[["x","2*x^2+1","0"],["x^2+1","0","4*x^2+2"]]"#);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["witnesses"], json!([{ "h": ["x", "-1", "4*x"], "p": "2*x^2+1" }]));
    }

    #[test]
    fn jacobi_example() {
        let (code, v) = run_json(Command::Jacobi, "[[1,2],[3,4]]");
        assert_eq!(code, 0);
        assert_eq!(v["result"]["jacobi"], json!(5));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_json(Command::Ghnf, "[[\"x+\"]]").0, 2);
        assert_eq!(run_json(Command::Jacobi, "[[1,2],[3]]").0, 2);
        assert_eq!(run_json(Command::Parametrize, r#"[["x","2*x^2+1","0"],["x^2+1","0","4*x^2+2"]]"#).0, 3);
        assert_eq!(run_json(Command::OrderBound, r#"{"rows": [["1"],["0"]]}"#).0, 3);
    }
}
