use std::fmt::Write as _;

use greenseq::render::{Mode, RenderSpec, Source};
use greenseq::stability::candidates;
use greenseq::verify::default_family;
use greenseq::{
    build_skl, class_count, collapse, dn_charge, enumerate_max_sets, is_linear_set, max_mgs_length, mgs,
    parse_quiver, project_charge, project_set, reineke_charge, semistable_set, spliced_mgs,
    spliced_semistable_set, spliced_stable_set, stable_set, valid_pairs, verify_equivalence, witness_linear,
    witness_spliced, CentralCharge, Error, GreenSequence, Quiver, Rational, Result, SplicedPath, StringModule,
};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::args::{
    ChargeArgs, Cli, CollapseArgs, Command, Diagram, DnArgs, MaxsetsArgs, PairArgs, QuiverArgs, RenderArgs,
    StableSetArgs, VerifyArgs, WitnessArgs,
};

/// A domain error, with whatever stdout was produced before it.
pub struct Failure {
    pub stdout: String,
    pub error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure {
            stdout: String::new(),
            error,
        }
    }
}

pub fn run(cli: &Cli) -> std::result::Result<String, Failure> {
    let json = cli.json;
    Ok(match &cli.command {
        Command::Quiver(a) => quiver(a, json)?,
        Command::StableSet(a) => stable(a, json)?,
        Command::Mgs(a) => green_sequence(a, json)?,
        Command::Maxsets(a) => maxsets(a, json)?,
        Command::Linearity(a) => linearity(a, json)?,
        Command::Witness(a) => witness(a, json)?,
        Command::Reineke(a) => {
            let q = read_quiver(&a.quiver)?;
            charge_output(&q, &reineke_charge(&q)?, json)?
        }
        Command::DnCharge(a) => dn(a, json)?,
        Command::Collapse(a) => collapse_cmd(a, json)?,
        Command::Render(a) => render(a)?,
        Command::Verify(a) => return verify(a, cli.jobs, json),
    })
}

/// `At:+-` style specs, or the quiver JSON emitted by `quiver --json`.
fn read_quiver(s: &str) -> Result<Quiver> {
    if s.trim_start().starts_with('{') {
        return parse_json(s);
    }
    parse_quiver(s)
}

/// Inline JSON, `@path` for a file, or `-` for stdin.
fn read_json_text(s: &str) -> Result<String> {
    if let Some(path) = s.strip_prefix('@') {
        return Ok(std::fs::read_to_string(path)?);
    }
    if s == "-" {
        return Ok(std::io::read_to_string(std::io::stdin())?);
    }
    Ok(s.to_string())
}

fn parse_json<T: DeserializeOwned>(s: &str) -> Result<T> {
    let text = read_json_text(s)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))
}

enum Src {
    Linear(CentralCharge),
    Spliced(SplicedPath),
}

/// Witness output `{"kind", "Z", "Zprime", ...}` is accepted wherever a charge or splice is.
fn witness_source(q: &Quiver, v: &Value) -> Result<Option<Src>> {
    let Some(z) = v.get("Z") else {
        return Ok(None);
    };
    let decode = |v: &Value| -> Result<CentralCharge> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("bad charge: {e}")))
    };
    let z = decode(z)?;
    match v.get("Zprime") {
        None | Some(Value::Null) => {
            z.check_for(q)?;
            Ok(Some(Src::Linear(z)))
        }
        Some(zp) => Ok(Some(Src::Spliced(SplicedPath::new(q, z, decode(zp)?)?))),
    }
}

fn read_source(q: &Quiver, a: &ChargeArgs) -> Result<Src> {
    let (text, spliced) = match (&a.charge, &a.splice) {
        (Some(c), _) => (c, false),
        (None, Some(s)) => (s, true),
        (None, None) => return Err(Error::Precondition("pass --charge or --splice".into())),
    };
    let value: Value = parse_json(text)?;
    if let Some(src) = witness_source(q, &value)? {
        return Ok(src);
    }
    let bad = |e: serde_json::Error| Error::Parse(format!("bad JSON: {e}"));
    if spliced {
        let raw: SplicedPath = serde_json::from_value(value).map_err(bad)?;
        Ok(Src::Spliced(SplicedPath::new(q, raw.z, raw.z_prime)?))
    } else {
        let z: CentralCharge = serde_json::from_value(value).map_err(bad)?;
        z.check_for(q)?;
        Ok(Src::Linear(z))
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn module_list(ms: &[StringModule]) -> String {
    ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
}

fn quiver(a: &QuiverArgs, json: bool) -> Result<String> {
    let q = read_quiver(&a.quiver)?;
    let cands = candidates(&q);
    if json {
        let mut v = json!({
            "quiver": q,
            "spec": q.to_string(),
            "vertices": q.n(),
            "a": q.a(),
            "b": q.b(),
            "max_mgs_length": max_mgs_length(&q),
            "candidates": cands.len(),
        });
        if a.modules {
            v["modules"] = json!(cands);
        }
        return Ok(to_json(&v));
    }
    let mut out = String::new();
    let _ = writeln!(out, "quiver          {q}");
    let _ = writeln!(out, "kind            {}", q.kind().tag());
    let _ = writeln!(out, "vertices        {}", q.n());
    let _ = writeln!(out, "signs (a, b)    ({}, {})", q.a(), q.b());
    let _ = writeln!(out, "max mgs length  {}", max_mgs_length(&q));
    let _ = writeln!(out, "candidates      {}", cands.len());
    if a.modules {
        for m in &cands {
            let _ = writeln!(out, "  {m}  dim {:?}", q.dim_vector(*m));
        }
    }
    Ok(out)
}

fn stable(a: &StableSetArgs, json: bool) -> Result<String> {
    let q = read_quiver(&a.source.quiver)?;
    let (mods, slopes): (Vec<StringModule>, Vec<Rational>) = match read_source(&q, &a.source)? {
        Src::Linear(z) => {
            let mods = if a.semistable { semistable_set(&q, &z)? } else { stable_set(&q, &z)? };
            let slopes = mods.iter().map(|m| z.slope(&q, *m)).collect();
            (mods, slopes)
        }
        Src::Spliced(p) => {
            let mods = if a.semistable {
                spliced_semistable_set(&q, &p)?
            } else {
                spliced_stable_set(&q, &p)?
            };
            let slopes = mods
                .iter()
                .map(|m| {
                    let s = p.z.slope(&q, *m);
                    if s.is_negative() {
                        s
                    } else {
                        p.z_prime.slope(&q, *m)
                    }
                })
                .collect();
            (mods, slopes)
        }
    };
    if json {
        let entries: Vec<Value> = mods
            .iter()
            .zip(&slopes)
            .map(|(m, s)| json!({"i": m.i, "j": m.j, "slope": s}))
            .collect();
        return Ok(to_json(&json!({ "quiver": q.to_string(), "count": mods.len(), "modules": entries })));
    }
    let mut out = String::new();
    let what = if a.semistable { "semistable" } else { "stable" };
    let _ = writeln!(out, "{} {what} modules on {q}", mods.len());
    for (m, s) in mods.iter().zip(&slopes) {
        let _ = writeln!(out, "  {m:<10} slope {s}");
    }
    Ok(out)
}

fn sequence_text(q: &Quiver, seq: &GreenSequence) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "maximal green sequence of length {} on {q}", seq.len());
    for (t, e) in seq.entries.iter().enumerate() {
        let _ = writeln!(out, "{:>4}  {:<10} slope {}", t + 1, e.module.to_string(), e.slope);
    }
    out
}

fn green_sequence(a: &ChargeArgs, json: bool) -> Result<String> {
    let q = read_quiver(&a.quiver)?;
    let seq = match read_source(&q, a)? {
        Src::Linear(z) => mgs(&q, &z)?,
        Src::Spliced(p) => spliced_mgs(&q, &p)?,
    };
    if json {
        return Ok(to_json(&json!({ "quiver": q.to_string(), "length": seq.len(), "sequence": seq.entries })));
    }
    Ok(sequence_text(&q, &seq))
}

fn maxsets(a: &MaxsetsArgs, json: bool) -> Result<String> {
    let q = read_quiver(&a.quiver)?;
    if let (Some(k), Some(l)) = (a.k, a.l) {
        let d = build_skl(&q, k, l)?;
        if json {
            return Ok(to_json(&d));
        }
        return Ok(format!(
            "S({k},{l}) on {q}: {} modules\n  A = {:?}\n  B = {:?}\n  {}\n",
            d.modules.len(),
            d.a_set,
            d.b_set,
            module_list(&d.modules)
        ));
    }
    let sets = enumerate_max_sets(&q)?;
    let classes = class_count(&sets);
    if json {
        return Ok(to_json(&json!({
            "quiver": q.to_string(),
            "max_mgs_length": max_mgs_length(&q),
            "descriptors": sets,
            "classes": classes,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} descriptors in {classes} classes on {q}, each of size {}",
        sets.len(),
        max_mgs_length(&q)
    );
    for s in &sets {
        let d = &s.descriptor;
        let _ = writeln!(out, "  ({}, {})  class {}  {}", d.k, d.l, s.class_id, module_list(&d.modules));
    }
    Ok(out)
}

fn linearity(a: &PairArgs, json: bool) -> Result<String> {
    let q = read_quiver(&a.quiver)?;
    let pairs = match (a.k, a.l) {
        (Some(k), Some(l)) => vec![(k, l)],
        _ => {
            let p = valid_pairs(&q);
            if p.is_empty() {
                return Err(Error::Precondition(format!("{q} has no valid pairs")));
            }
            p
        }
    };
    let mut rows = Vec::new();
    for (k, l) in pairs {
        rows.push(((k, l), is_linear_set(&q, k, l)?));
    }
    if json {
        let v: Vec<Value> = rows
            .iter()
            .map(|((k, l), v)| json!({"k": k, "l": l, "linear": v.linear, "witness": v.witness, "satisfied": v.satisfied}))
            .collect();
        return Ok(to_json(&if v.len() == 1 { v[0].clone() } else { json!(v) }));
    }
    let mut out = String::new();
    for ((k, l), v) in rows {
        match (v.witness, v.satisfied) {
            (Some((k1, l1, l2, k2)), _) => {
                let _ = writeln!(out, "({k}, {l}) nonlinear: witness (k', l', l'', k'') = ({k1}, {l1}, {l2}, {k2})");
            }
            (None, Some(c)) => {
                let _ = writeln!(out, "({k}, {l}) linear: {c:?} holds");
            }
            (None, None) => unreachable!("a linear verdict names its condition"),
        }
    }
    Ok(out)
}

fn witness(a: &WitnessArgs, json: bool) -> Result<String> {
    let q = read_quiver(&a.quiver)?;
    let linear = is_linear_set(&q, a.k, a.l)?.linear;
    let target = build_skl(&q, a.k, a.l)?.modules;
    let (kind, z, z_prime, set) = if linear && !a.spliced {
        let z = witness_linear(&q, a.k, a.l)?;
        let set = stable_set(&q, &z)?;
        ("linear", z, None, set)
    } else {
        let p = witness_spliced(&q, a.k, a.l)?;
        let set = spliced_stable_set(&q, &p)?;
        ("spliced", p.z, Some(p.z_prime), set)
    };
    let verified = set == target;
    if json {
        return Ok(to_json(&json!({
            "k": a.k,
            "l": a.l,
            "kind": kind,
            "Z": z,
            "Zprime": z_prime,
            "verified": verified,
            "stable_count": set.len(),
        })));
    }
    let mut out = format!(
        "{kind} witness for S({},{}) on {q}{}\nZ  {}\n",
        a.k,
        a.l,
        if linear { "" } else { " (no linear charge exists)" },
        serde_json::to_string(&z).expect("serializable"),
    );
    if let Some(zp) = &z_prime {
        out += &format!("Z' {}\n", serde_json::to_string(zp).expect("serializable"));
    }
    out += &format!(
        "stable ({}, {}): {}\n",
        set.len(),
        if verified { "verified" } else { "MISMATCH" },
        module_list(&set)
    );
    Ok(out)
}

fn charge_output(q: &Quiver, z: &CentralCharge, json: bool) -> Result<String> {
    if json {
        return Ok(to_json(z));
    }
    let set = stable_set(q, z)?;
    Ok(format!(
        "charge {}\nstable on {q} ({}): {}\n",
        serde_json::to_string(z).expect("serializable"),
        set.len(),
        module_list(&set)
    ))
}

fn dn(a: &DnArgs, json: bool) -> Result<String> {
    let q = read_quiver(&a.quiver)?;
    charge_output(&q, &dn_charge(&q, a.k)?, json)
}

fn collapse_cmd(a: &CollapseArgs, json: bool) -> Result<String> {
    let q = read_quiver(&a.quiver)?;
    let p = collapse(&q, &a.arrows)?;
    let n = q.n() as i64;
    let pi: Vec<i64> = (1..=n).map(|t| p.pi(t)).collect();
    let charge = match &a.charge {
        Some(c) => {
            let z: CentralCharge = parse_json(c)?;
            Some(project_charge(&p, &z)?)
        }
        None => None,
    };
    let projected = match (a.k, a.l) {
        (Some(k), Some(l)) => Some(project_set(&p, &build_skl(&q, k, l)?.modules)),
        _ => None,
    };
    if json {
        let mut v = json!({ "source": q.to_string(), "target": p.target, "target_spec": p.target.to_string(), "pi": pi });
        if let Some(z) = &charge {
            v["charge"] = json!(z);
        }
        if let Some(s) = &projected {
            v["projected_set"] = json!(s);
        }
        return Ok(to_json(&v));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{q} -> {}", p.target);
    let _ = writeln!(out, "pi(1..={n}) = {pi:?}");
    if let Some(z) = &charge {
        let _ = writeln!(out, "projected charge {}", serde_json::to_string(z).expect("serializable"));
    }
    if let Some(s) = &projected {
        let _ = writeln!(out, "projected S ({}): {}", s.len(), module_list(s));
    }
    Ok(out)
}

fn parse_window<T: std::str::FromStr>(w: &[String]) -> Result<(T, T)> {
    let parse = |s: &String| {
        s.parse::<T>()
            .map_err(|_| Error::Parse(format!("bad window bound {s:?}")))
    };
    Ok((parse(&w[0])?, parse(&w[1])?))
}

fn render(a: &RenderArgs) -> Result<String> {
    let q = read_quiver(&a.source.quiver)?;
    let src = read_source(&q, &a.source)?;
    let mode = match a.diagram {
        Diagram::Chord => Mode::Chord,
        Diagram::Wire => Mode::Wire,
    };
    let mut spec = RenderSpec::new(mode);
    if let Some(w) = &a.window {
        match mode {
            Mode::Chord => spec.index_window = Some(parse_window::<i64>(w)?),
            Mode::Wire => spec.t_window = Some(parse_window::<Rational>(w)?),
        }
    }
    let source = match &src {
        Src::Linear(z) => Source::Linear(z),
        Src::Spliced(p) => Source::Spliced(p),
    };
    let svg = greenseq::render(&q, source, &spec)?;
    match &a.output {
        Some(path) => {
            greenseq::write_svg(path, &svg)?;
            Ok(String::new())
        }
        None => Ok(svg),
    }
}

fn verify(a: &VerifyArgs, jobs: usize, json: bool) -> std::result::Result<String, Failure> {
    let quivers = if a.quiver.is_empty() {
        default_family()
    } else {
        a.quiver.iter().map(|s| read_quiver(s)).collect::<Result<Vec<_>>>()?
    };
    let report = verify_equivalence(&quivers, a.trials, a.seed, a.max_denominator, jobs)?;
    let out = if json {
        to_json(&report)
    } else {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "seed {}  trials {}  max denominator {}  quivers {}",
            report.seed,
            report.trials,
            report.max_denominator,
            report.quivers.len()
        );
        for r in &report.quivers {
            let _ = writeln!(out, "  {:<14} {:>9} checks  {} mismatches", r.quiver, r.modules_checked, r.mismatches.len());
            for m in &r.mismatches {
                let _ = writeln!(out, "    counterexample {}", serde_json::to_string(m).expect("serializable"));
            }
        }
        let _ = writeln!(out, "total: {} checks, {} mismatches", report.modules_checked(), report.mismatch_count());
        out
    };
    if report.mismatch_count() > 0 {
        return Err(Failure {
            stdout: out,
            error: Error::VerificationFailed(format!(
                "{} modules classified differently by the three criteria",
                report.mismatch_count()
            )),
        });
    }
    Ok(out)
}
