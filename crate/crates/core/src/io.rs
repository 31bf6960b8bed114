//! JSON encodings of every exchanged object.
//!
//! Conventions: rationals are `"a/b"` strings (decoding also accepts `"a"`
//! and JSON integers); a field element is its array of power-basis
//! coordinates (a bare rational is accepted for elements of `Q`-multiples);
//! a matrix is an array of rows; a number field is
//! `{"minpoly": [c0, c1, …]}` with ascending coefficients and an optional
//! `"embedding": [re_lo, re_hi, im_lo, im_hi]` isolating box. Documents carry
//! an optional top-level `"field"`; when absent the field is `Q`.
//!
//! Decoding errors name the JSON path of the offending value.

use serde_json::{json, Map, Value};

use crate::conjugacy::{Certificate, Chain, ChainInvariant, FiniteImagePair, GenWord, Verdict};
use crate::error::{Error, Result};
use crate::field::rational::{format_rational, parse_rational};
use crate::field::{
    Field, FieldElement, NumberField, Rational, RootBox, DEFAULT_IRREDUCIBILITY_BOUND,
};
use crate::groups::{GroupSpec, Tensor, Word};
use crate::isocrystal::{LogModule, PhiNModule, SeriesMatrix};
use crate::linalg::Matrix;
use crate::monodromy::TamePresentation;
use crate::sl2::SL2Triple;
use crate::wd::{Report, WDPair};

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn child(path: &str, key: &str) -> String {
    format!("{path}.{key}")
}

fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn field_of<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    o.get(key)
        .ok_or_else(|| err(path, format!("missing field {key:?}")))
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn u64_of(v: &Value, path: &str) -> Result<u64> {
    match v {
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| err(path, "expected a non-negative integer")),
        _ => v
            .as_u64()
            .ok_or_else(|| err(path, "expected a non-negative integer")),
    }
}

fn i64_of(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(path, "expected an integer"))
}

fn str_of<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| err(path, "expected a string"))
}

// ---------------------------------------------------------------- scalars

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| err(path, e)),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).map_err(|e| err(path, e))
        }
        _ => Err(err(path, "expected a rational \"a/b\"")),
    }
}

pub fn field_to_json(f: &Field) -> Value {
    let mut o = Map::new();
    o.insert(
        "minpoly".into(),
        Value::Array(f.minpoly().iter().map(rational_to_json).collect()),
    );
    if let Some(b) = f.embedding() {
        o.insert(
            "embedding".into(),
            json!([
                format_rational(&b.re_lo),
                format_rational(&b.re_hi),
                format_rational(&b.im_lo),
                format_rational(&b.im_hi)
            ]),
        );
    }
    Value::Object(o)
}

pub fn field_from_json(v: &Value, path: &str) -> Result<Field> {
    let o = object(v, path)?;
    let mp = child(path, "minpoly");
    let coeffs = array(field_of(o, "minpoly", path)?, &mp)?
        .iter()
        .enumerate()
        .map(|(i, c)| rational_from_json(c, &index(&mp, i)))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() == 2
        && coeffs[0] == Rational::from_integer(0.into())
        && o.get("embedding").is_none()
    {
        return Ok(NumberField::rationals());
    }
    let embedding = match o.get("embedding") {
        None | Some(Value::Null) => None,
        Some(e) => {
            let ep = child(path, "embedding");
            let c = array(e, &ep)?;
            if c.len() != 4 {
                return Err(err(&ep, "expected [re_lo, re_hi, im_lo, im_hi]"));
            }
            let r = |i: usize| rational_from_json(&c[i], &index(&ep, i));
            Some(RootBox::new(r(0)?, r(1)?, r(2)?, r(3)?))
        }
    };
    NumberField::new(coeffs, embedding, DEFAULT_IRREDUCIBILITY_BOUND).map_err(|e| err(path, e))
}

/// The document's field: its `"field"` entry, or `Q` when absent.
pub fn document_field(v: &Value) -> Result<Field> {
    match v.get("field") {
        None | Some(Value::Null) => Ok(NumberField::rationals()),
        Some(f) => field_from_json(f, "$.field"),
    }
}

pub fn element_to_json(x: &FieldElement) -> Value {
    Value::Array(x.coords().iter().map(rational_to_json).collect())
}

pub fn element_from_json(field: &Field, v: &Value, path: &str) -> Result<FieldElement> {
    match v {
        Value::Array(cs) => {
            if cs.len() > field.degree() {
                return Err(err(
                    path,
                    format!(
                        "{} coordinates for a field of degree {}",
                        cs.len(),
                        field.degree()
                    ),
                ));
            }
            let coords = cs
                .iter()
                .enumerate()
                .map(|(i, c)| rational_from_json(c, &index(path, i)))
                .collect::<Result<Vec<_>>>()?;
            Ok(FieldElement::from_coords(field, coords))
        }
        _ => Ok(FieldElement::from_rational(
            field,
            rational_from_json(v, path)?,
        )),
    }
}

fn elements_to_json(xs: &[FieldElement]) -> Value {
    Value::Array(xs.iter().map(element_to_json).collect())
}

fn elements_from_json(field: &Field, v: &Value, path: &str) -> Result<Vec<FieldElement>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| element_from_json(field, x, &index(path, i)))
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| elements_to_json(r)).collect())
}

pub fn matrix_from_json(field: &Field, v: &Value, path: &str) -> Result<Matrix> {
    let rows = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| elements_from_json(field, r, &index(path, i)))
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(err(path, "empty matrix"));
    }
    Matrix::from_rows(field, rows).map_err(|e| err(path, e))
}

// ---------------------------------------------------------------- groups

pub fn group_to_json(g: &GroupSpec) -> Value {
    let mut o = Map::new();
    o.insert("variant".into(), json!(g.variant_name()));
    o.insert("n".into(), json!(g.n()));
    if let Some(f) = g.form() {
        o.insert("form".into(), matrix_to_json(f));
    }
    match g {
        GroupSpec::Product(fs) => {
            o.insert(
                "factors".into(),
                Value::Array(fs.iter().map(group_to_json).collect()),
            );
        }
        GroupSpec::TensorStabilizer { tensors, .. } => {
            let ts = tensors.iter().map(|t| json!({"shape": t.word.to_string(), "entries": elements_to_json(&t.entries)})).collect();
            o.insert("tensors".into(), Value::Array(ts));
        }
        _ => {}
    }
    Value::Object(o)
}

pub fn group_from_json(field: &Field, v: &Value, path: &str) -> Result<GroupSpec> {
    let o = object(v, path)?;
    let variant = str_of(field_of(o, "variant", path)?, &child(path, "variant"))?;
    let n = || -> Result<usize> { usize_of(field_of(o, "n", path)?, &child(path, "n")) };
    let form = || -> Result<Matrix> {
        matrix_from_json(field, field_of(o, "form", path)?, &child(path, "form"))
    };
    let g = match variant {
        "GL" => GroupSpec::GL { n: n()? },
        "SL" => GroupSpec::SL { n: n()? },
        "Sp" | "SO" | "O" => {
            let form = form()?;
            let size = form.rows();
            if let Some(nv) = o.get("n") {
                if usize_of(nv, &child(path, "n"))? != size {
                    return Err(err(&child(path, "n"), "does not match the form size"));
                }
            }
            match variant {
                "Sp" => GroupSpec::Sp { n: size, form },
                "SO" => GroupSpec::SO { n: size, form },
                _ => GroupSpec::O { n: size, form },
            }
        }
        "Product" => {
            let fp = child(path, "factors");
            let fs = array(field_of(o, "factors", path)?, &fp)?
                .iter()
                .enumerate()
                .map(|(i, f)| group_from_json(field, f, &index(&fp, i)))
                .collect::<Result<Vec<_>>>()?;
            GroupSpec::Product(fs)
        }
        "TensorStabilizer" => {
            let tp = child(path, "tensors");
            let mut tensors = Vec::new();
            for (i, t) in array(field_of(o, "tensors", path)?, &tp)?
                .iter()
                .enumerate()
            {
                let ip = index(&tp, i);
                let to = object(t, &ip)?;
                let shape = str_of(field_of(to, "shape", &ip)?, &child(&ip, "shape"))?;
                let word = Word::parse(shape).map_err(|e| err(&child(&ip, "shape"), e))?;
                let entries = elements_from_json(
                    field,
                    field_of(to, "entries", &ip)?,
                    &child(&ip, "entries"),
                )?;
                tensors.push(Tensor { word, entries });
            }
            GroupSpec::TensorStabilizer { n: n()?, tensors }
        }
        other => {
            return Err(err(
                &child(path, "variant"),
                format!("unknown group variant {other:?}"),
            ))
        }
    };
    g.validate().map_err(|e| err(path, e))?;
    Ok(g)
}

fn with_field(mut o: Map<String, Value>, field: &Field) -> Value {
    if !field.is_rational() {
        o.insert("field".into(), field_to_json(field));
    }
    Value::Object(o)
}

// ---------------------------------------------------------------- pairs

pub fn pair_to_json(p: &WDPair) -> Value {
    let mut o = Map::new();
    o.insert("group".into(), group_to_json(&p.group));
    o.insert("s".into(), matrix_to_json(&p.s));
    o.insert("N".into(), matrix_to_json(&p.n));
    o.insert("q".into(), rational_to_json(&p.q));
    with_field(o, p.field())
}

pub fn pair_from_json(v: &Value) -> Result<WDPair> {
    let field = document_field(v)?;
    let o = object(v, "$")?;
    Ok(WDPair {
        group: group_from_json(&field, field_of(o, "group", "$")?, "$.group")?,
        s: matrix_from_json(&field, field_of(o, "s", "$")?, "$.s")?,
        n: matrix_from_json(&field, field_of(o, "N", "$")?, "$.N")?,
        q: rational_from_json(field_of(o, "q", "$")?, "$.q")?,
    })
}

pub fn presentation_to_json(t: &TamePresentation) -> Value {
    let mut o = Map::new();
    o.insert("group".into(), group_to_json(&t.group));
    o.insert("sigma".into(), matrix_to_json(&t.sigma));
    o.insert("gamma".into(), matrix_to_json(&t.gamma));
    o.insert("q".into(), rational_to_json(&t.q));
    with_field(o, t.sigma.field())
}

pub fn presentation_from_json(v: &Value) -> Result<TamePresentation> {
    let field = document_field(v)?;
    let o = object(v, "$")?;
    Ok(TamePresentation {
        group: group_from_json(&field, field_of(o, "group", "$")?, "$.group")?,
        sigma: matrix_from_json(&field, field_of(o, "sigma", "$")?, "$.sigma")?,
        gamma: matrix_from_json(&field, field_of(o, "gamma", "$")?, "$.gamma")?,
        q: rational_from_json(field_of(o, "q", "$")?, "$.q")?,
    })
}

pub fn triple_to_json(t: &SL2Triple) -> Value {
    json!({"E": matrix_to_json(&t.e), "H": matrix_to_json(&t.h), "F": matrix_to_json(&t.f)})
}

pub fn triple_from_json(field: &Field, v: &Value, path: &str) -> Result<SL2Triple> {
    let o = object(v, path)?;
    let m = |k: &str| matrix_from_json(field, field_of(o, k, path)?, &child(path, k));
    Ok(SL2Triple {
        e: m("E")?,
        h: m("H")?,
        f: m("F")?,
    })
}

// ---------------------------------------------------------------- modules

fn series_to_json(s: &SeriesMatrix) -> Value {
    let n = s.dim();
    let rows = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| {
                        elements_to_json(
                            &s.coeffs()
                                .iter()
                                .map(|c| c.get(i, j).clone())
                                .collect::<Vec<_>>(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn series_from_json(field: &Field, v: &Value, order: usize, path: &str) -> Result<SeriesMatrix> {
    let rows = array(v, path)?;
    let n = rows.len();
    if n == 0 {
        return Err(err(path, "empty matrix"));
    }
    let mut coeffs = vec![Matrix::zeros(field, n, n); order];
    for (i, r) in rows.iter().enumerate() {
        let rp = index(path, i);
        let r = array(r, &rp)?;
        if r.len() != n {
            return Err(err(&rp, format!("expected {n} entries")));
        }
        for (j, e) in r.iter().enumerate() {
            let ep = index(&rp, j);
            let cs = elements_from_json(field, e, &ep)?;
            if cs.len() > order {
                return Err(err(
                    &ep,
                    format!("{} coefficients exceed the order {order}", cs.len()),
                ));
            }
            for (k, c) in cs.into_iter().enumerate() {
                coeffs[k].set(i, j, c);
            }
        }
    }
    SeriesMatrix::new(coeffs).map_err(|e| err(path, e))
}

pub fn log_module_to_json(m: &LogModule) -> Value {
    let mut o = Map::new();
    o.insert("p".into(), json!(m.p));
    o.insert("order".into(), json!(m.order()));
    o.insert("A".into(), series_to_json(&m.a));
    o.insert("Phi".into(), series_to_json(&m.phi));
    with_field(o, m.a.field())
}

/// Decodes a module; `order_override` truncates or pads to that order.
pub fn log_module_from_json(v: &Value, order_override: Option<usize>) -> Result<LogModule> {
    let field = document_field(v)?;
    let o = object(v, "$")?;
    let p = u64_of(field_of(o, "p", "$")?, "$.p")?;
    let declared = usize_of(field_of(o, "order", "$")?, "$.order")?;
    if declared == 0 {
        return Err(err("$.order", "order must be positive"));
    }
    let a = series_from_json(&field, field_of(o, "A", "$")?, declared, "$.A")?;
    let phi = series_from_json(&field, field_of(o, "Phi", "$")?, declared, "$.Phi")?;
    if a.dim() != phi.dim() {
        return Err(err("$", "A and Phi have different sizes"));
    }
    let m = LogModule::new(p, a, phi);
    Ok(match order_override {
        Some(t) if t != declared => m.with_order(t),
        _ => m,
    })
}

pub fn phi_n_to_json(d: &PhiNModule) -> Value {
    let mut o = Map::new();
    o.insert("p".into(), json!(d.p));
    o.insert("phi0".into(), matrix_to_json(&d.phi0));
    o.insert("N".into(), matrix_to_json(&d.n));
    with_field(o, d.phi0.field())
}

pub fn phi_n_from_json(v: &Value) -> Result<PhiNModule> {
    let field = document_field(v)?;
    let o = object(v, "$")?;
    Ok(PhiNModule {
        p: u64_of(field_of(o, "p", "$")?, "$.p")?,
        phi0: matrix_from_json(&field, field_of(o, "phi0", "$")?, "$.phi0")?,
        n: matrix_from_json(&field, field_of(o, "N", "$")?, "$.N")?,
    })
}

// ---------------------------------------------------------------- finite images

fn gen_word_to_json(w: &GenWord) -> Value {
    Value::Array(w.iter().map(|&(i, e)| json!([i, e])).collect())
}

fn gen_word_from_json(v: &Value, path: &str) -> Result<GenWord> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let fp = index(path, k);
            let f = array(f, &fp)?;
            if f.len() != 2 {
                return Err(err(&fp, "expected [generator, exponent]"));
            }
            Ok((
                usize_of(&f[0], &index(&fp, 0))?,
                i64_of(&f[1], &index(&fp, 1))?,
            ))
        })
        .collect()
}

pub fn finite_pair_to_json(r: &FiniteImagePair) -> Value {
    let mut o = Map::new();
    o.insert("group".into(), group_to_json(&r.group));
    o.insert(
        "generators".into(),
        Value::Array(r.generators.iter().map(matrix_to_json).collect()),
    );
    o.insert(
        "relations".into(),
        Value::Array(r.relations.iter().map(gen_word_to_json).collect()),
    );
    match r.generators.first() {
        Some(g) => with_field(o, g.field()),
        None => Value::Object(o),
    }
}

pub fn finite_pair_from_json(v: &Value) -> Result<FiniteImagePair> {
    let field = document_field(v)?;
    let o = object(v, "$")?;
    let group = group_from_json(&field, field_of(o, "group", "$")?, "$.group")?;
    let generators = array(field_of(o, "generators", "$")?, "$.generators")?
        .iter()
        .enumerate()
        .map(|(i, g)| matrix_from_json(&field, g, &index("$.generators", i)))
        .collect::<Result<Vec<_>>>()?;
    let relations = match o.get("relations") {
        None => Vec::new(),
        Some(rs) => array(rs, "$.relations")?
            .iter()
            .enumerate()
            .map(|(i, r)| gen_word_from_json(r, &index("$.relations", i)))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(FiniteImagePair {
        group,
        generators,
        relations,
    })
}

// ---------------------------------------------------------------- invariants and verdicts

pub fn chain_invariant_to_json(c: &ChainInvariant) -> Value {
    let chains = c
        .chains
        .iter()
        .map(|ch| json!({"eigenvalues": elements_to_json(&ch.eigenvalues), "multiplicities": ch.multiplicities}))
        .collect();
    json!({"q": rational_to_json(&c.q), "chains": Value::Array(chains), "text": c.to_string()})
}

pub fn chain_invariant_from_json(field: &Field, v: &Value, path: &str) -> Result<ChainInvariant> {
    let o = object(v, path)?;
    let q = rational_from_json(field_of(o, "q", path)?, &child(path, "q"))?;
    let cp = child(path, "chains");
    let mut chains = Vec::new();
    for (i, c) in array(field_of(o, "chains", path)?, &cp)?.iter().enumerate() {
        let ip = index(&cp, i);
        let co = object(c, &ip)?;
        let eigenvalues = elements_from_json(
            field,
            field_of(co, "eigenvalues", &ip)?,
            &child(&ip, "eigenvalues"),
        )?;
        let mp = child(&ip, "multiplicities");
        let multiplicities = array(field_of(co, "multiplicities", &ip)?, &mp)?
            .iter()
            .enumerate()
            .map(|(k, row)| {
                array(row, &index(&mp, k))?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| usize_of(x, &index(&index(&mp, k), j)))
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        chains.push(Chain {
            eigenvalues,
            multiplicities,
        });
    }
    Ok(ChainInvariant { q, chains })
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    match c {
        Certificate::ChainInvariants { rep, left, right } => json!({
            "kind": "chain_invariants",
            "rep": rep.to_string(),
            "left": chain_invariant_to_json(left),
            "right": chain_invariant_to_json(right),
        }),
        Certificate::SemisimpleCharpoly { rep, left, right } => json!({
            "kind": "semisimple_charpoly",
            "rep": rep.to_string(),
            "left": elements_to_json(left),
            "right": elements_to_json(right),
        }),
        Certificate::Multiplicities(d) => json!({"kind": "multiplicities", "detail": d}),
        Certificate::Determinant { o_witness } => {
            json!({"kind": "determinant", "o_witness": matrix_to_json(o_witness)})
        }
        Certificate::Pfaffian { terms, left, right } => json!({
            "kind": "pfaffian",
            "terms": terms.iter().map(|(w, c)| json!([w, c])).collect::<Vec<_>>(),
            "left": element_to_json(left),
            "right": element_to_json(right),
        }),
    }
}

pub fn certificate_from_json(field: &Field, v: &Value, path: &str) -> Result<Certificate> {
    let o = object(v, path)?;
    let get = |k: &str| field_of(o, k, path);
    let rep = || -> Result<Word> {
        Word::parse(str_of(get("rep")?, &child(path, "rep"))?)
            .map_err(|e| err(&child(path, "rep"), e))
    };
    match str_of(get("kind")?, &child(path, "kind"))? {
        "chain_invariants" => Ok(Certificate::ChainInvariants {
            rep: rep()?,
            left: chain_invariant_from_json(field, get("left")?, &child(path, "left"))?,
            right: chain_invariant_from_json(field, get("right")?, &child(path, "right"))?,
        }),
        "semisimple_charpoly" => Ok(Certificate::SemisimpleCharpoly {
            rep: rep()?,
            left: elements_from_json(field, get("left")?, &child(path, "left"))?,
            right: elements_from_json(field, get("right")?, &child(path, "right"))?,
        }),
        "multiplicities" => Ok(Certificate::Multiplicities(
            str_of(get("detail")?, &child(path, "detail"))?.to_string(),
        )),
        "determinant" => Ok(Certificate::Determinant {
            o_witness: matrix_from_json(field, get("o_witness")?, &child(path, "o_witness"))?,
        }),
        "pfaffian" => {
            let tp = child(path, "terms");
            let terms = array(get("terms")?, &tp)?
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let ip = index(&tp, i);
                    let t = array(t, &ip)?;
                    if t.len() != 2 {
                        return Err(err(&ip, "expected [element, coefficient]"));
                    }
                    let w = array(&t[0], &index(&ip, 0))?
                        .iter()
                        .map(|x| usize_of(x, &index(&ip, 0)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((w, i64_of(&t[1], &index(&ip, 1))?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Certificate::Pfaffian {
                terms,
                left: element_from_json(field, get("left")?, &child(path, "left"))?,
                right: element_from_json(field, get("right")?, &child(path, "right"))?,
            })
        }
        other => Err(err(
            &child(path, "kind"),
            format!("unknown certificate kind {other:?}"),
        )),
    }
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    match v {
        Verdict::Equivalent(g) => json!({"verdict": "Equivalent", "witness": matrix_to_json(g)}),
        Verdict::Inequivalent(c) => {
            json!({"verdict": "Inequivalent", "certificate": certificate_to_json(c)})
        }
        Verdict::Unknown(r) => json!({"verdict": "Unknown", "reason": r}),
    }
}

pub fn verdict_from_json(field: &Field, v: &Value, path: &str) -> Result<Verdict> {
    let o = object(v, path)?;
    match str_of(field_of(o, "verdict", path)?, &child(path, "verdict"))? {
        "Equivalent" => Ok(Verdict::Equivalent(matrix_from_json(
            field,
            field_of(o, "witness", path)?,
            &child(path, "witness"),
        )?)),
        "Inequivalent" => Ok(Verdict::Inequivalent(certificate_from_json(
            field,
            field_of(o, "certificate", path)?,
            &child(path, "certificate"),
        )?)),
        "Unknown" => Ok(Verdict::Unknown(
            str_of(field_of(o, "reason", path)?, &child(path, "reason"))?.to_string(),
        )),
        other => Err(err(
            &child(path, "verdict"),
            format!("unknown verdict {other:?}"),
        )),
    }
}

pub fn report_to_json(r: &Report) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    json!({"ok": r.ok(), "checks": checks})
}

/// Parses JSON text, reporting line and column on syntax errors.
pub fn parse_document(text: &str, origin: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "{origin}: line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rat};
    use crate::groups::{hyperbolic_form, standard_symplectic_form};

    fn qi() -> Field {
        NumberField::new(
            vec![int(1), int(0), int(1)],
            None,
            DEFAULT_IRREDUCIBILITY_BOUND,
        )
        .unwrap()
    }

    fn reparse(v: &Value) -> Value {
        serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap()
    }

    #[test]
    fn rationals_accept_three_spellings() {
        assert_eq!(rational_from_json(&json!("3/6"), "$").unwrap(), rat(1, 2));
        assert_eq!(rational_from_json(&json!("-4"), "$").unwrap(), int(-4));
        assert_eq!(rational_from_json(&json!(7), "$").unwrap(), int(7));
        assert_eq!(rational_to_json(&int(2)), json!("2/1"));
        assert!(rational_from_json(&json!(0.5), "$.q")
            .unwrap_err()
            .to_string()
            .contains("$.q"));
    }

    #[test]
    fn pair_round_trip_over_gaussian_field() {
        let k = qi();
        let i = FieldElement::generator(&k);
        let s = Matrix::diagonal(
            &k,
            &[
                i.clone(),
                -&i,
                FieldElement::from_int(&k, 2),
                FieldElement::from_rational(&k, rat(-1, 2)),
            ],
        );
        let n = Matrix::zeros(&k, 4, 4);
        let p = WDPair::new(
            GroupSpec::SO {
                n: 4,
                form: hyperbolic_form(&k, 4),
            },
            s,
            n,
            int(9),
        );
        let v = pair_to_json(&p);
        assert_eq!(pair_from_json(&reparse(&v)).unwrap(), p);
        assert_eq!(pair_to_json(&pair_from_json(&v).unwrap()), v);
    }

    #[test]
    fn groups_round_trip() {
        let q = NumberField::rationals();
        let gs = vec![
            GroupSpec::gl(3),
            GroupSpec::sl(2),
            GroupSpec::Sp {
                n: 4,
                form: standard_symplectic_form(&q, 4),
            },
            GroupSpec::O {
                n: 3,
                form: Matrix::identity(&q, 3),
            },
            GroupSpec::Product(vec![GroupSpec::gl(1), GroupSpec::sl(2)]),
            GroupSpec::TensorStabilizer {
                n: 2,
                tensors: vec![Tensor {
                    word: Word::alt(2, Word::Dual),
                    entries: vec![FieldElement::one(&q)],
                }],
            },
        ];
        for g in gs {
            let v = group_to_json(&g);
            assert_eq!(group_from_json(&q, &reparse(&v), "$").unwrap(), g, "{v}");
        }
    }

    #[test]
    fn malformed_inputs_name_their_path() {
        let bad = json!({"group": {"variant": "GL", "n": 2}, "s": [[1, 0], [0, "x"]], "N": [[0, 0], [0, 0]], "q": "2"});
        let e = pair_from_json(&bad).unwrap_err().to_string();
        assert!(e.contains("$.s[1][1]"), "{e}");
        let e = pair_from_json(&json!({"group": {"variant": "GL", "n": 2}}))
            .unwrap_err()
            .to_string();
        assert!(e.contains("missing field \"s\""), "{e}");
        let e = parse_document("{\"a\": [1,\n 2", "input.json")
            .unwrap_err()
            .to_string();
        assert!(e.contains("input.json: line 2"), "{e}");
        let e = group_from_json(
            &NumberField::rationals(),
            &json!({"variant": "Spin", "n": 3}),
            "$.group",
        )
        .unwrap_err()
        .to_string();
        assert!(e.contains("$.group.variant"), "{e}");
    }

    #[test]
    fn log_module_round_trip_and_truncation() {
        let q = NumberField::rationals();
        let a = SeriesMatrix::new(vec![
            Matrix::unit(&q, 2, 1, 0),
            Matrix::unit(&q, 2, 0, 1),
            Matrix::zeros(&q, 2, 2),
        ])
        .unwrap();
        let phi = SeriesMatrix::new(vec![
            Matrix::from_ints(&q, &[vec![1, 0], vec![0, 2]]),
            Matrix::zeros(&q, 2, 2),
            Matrix::identity(&q, 2),
        ])
        .unwrap();
        let m = LogModule::new(2, a, phi);
        let v = log_module_to_json(&m);
        assert_eq!(v["A"][0][1], json!([["0/1"], ["1/1"], ["0/1"]]));
        assert_eq!(log_module_from_json(&reparse(&v), None).unwrap(), m);
        let short = log_module_from_json(&v, Some(1)).unwrap();
        assert_eq!(short.order(), 1);
        assert_eq!(short.phi.coeff(0), m.phi.coeff(0));
        let d = PhiNModule {
            p: 2,
            phi0: m.phi.coeff(0).clone(),
            n: Matrix::unit(&q, 2, 1, 0),
        };
        assert_eq!(phi_n_from_json(&reparse(&phi_n_to_json(&d))).unwrap(), d);
    }

    #[test]
    fn verdicts_round_trip() {
        let k = qi();
        let vs = vec![
            Verdict::Equivalent(Matrix::identity(&k, 2)),
            Verdict::Unknown("budget".into()),
            Verdict::Inequivalent(Certificate::Multiplicities("x".into())),
            Verdict::Inequivalent(Certificate::Pfaffian {
                terms: vec![(vec![1, 0], 1), (vec![0, 1], -2)],
                left: FieldElement::generator(&k),
                right: FieldElement::zero(&k),
            }),
            Verdict::Inequivalent(Certificate::SemisimpleCharpoly {
                rep: Word::sym(2, Word::Std),
                left: vec![FieldElement::one(&k)],
                right: vec![FieldElement::generator(&k)],
            }),
            Verdict::Inequivalent(Certificate::ChainInvariants {
                rep: Word::tensor(Word::Std, Word::Dual),
                left: ChainInvariant {
                    q: int(2),
                    chains: vec![Chain {
                        eigenvalues: vec![FieldElement::one(&k), FieldElement::from_int(&k, 2)],
                        multiplicities: vec![vec![0, 1], vec![0]],
                    }],
                },
                right: ChainInvariant {
                    q: int(2),
                    chains: vec![],
                },
            }),
        ];
        for v in vs {
            let j = verdict_to_json(&v);
            assert_eq!(verdict_from_json(&k, &reparse(&j), "$").unwrap(), v, "{j}");
        }
    }

    #[test]
    fn finite_pairs_and_presentations_round_trip() {
        let q = NumberField::rationals();
        let r = FiniteImagePair {
            group: GroupSpec::gl(2),
            generators: vec![Matrix::from_ints(&q, &[vec![0, -1], vec![1, 0]])],
            relations: vec![vec![(0, 4)]],
        };
        assert_eq!(
            finite_pair_from_json(&reparse(&finite_pair_to_json(&r))).unwrap(),
            r
        );
        let t = TamePresentation {
            group: GroupSpec::gl(2),
            sigma: Matrix::from_ints(&q, &[vec![1, 0], vec![0, 2]]),
            gamma: Matrix::from_ints(&q, &[vec![1, 0], vec![1, 1]]),
            q: int(2),
        };
        assert_eq!(
            presentation_from_json(&reparse(&presentation_to_json(&t))).unwrap(),
            t
        );
    }
}
