//! Algebra spec files: a small JSON expression language over the named
//! constructions, with raw structure constants as an escape hatch.
//!
//! ```json
//! {"construct": ["crossed_product", ["matrix", "reals", 2], ["conj_by", ["diag", 1, -1]]]}
//! {"construct": "quaternions", "involution": ["conj_by", "i"]}
//! {"structure": [[["1"]]], "unit": ["1"]}
//! ```
//!
//! An array whose head is a non-numeric string is a call. Other strings are
//! rationals (`"p/q"`) when they look numeric and symbols otherwise.

use std::fmt;

use serde_json::{json, Map, Value};
use twistk_core::algebra::Algebra;
use twistk_core::constructions::{
    clifford, complex, crossed_product, direct_product, dual_numbers, group_algebra, matrix_algebra, matrix_diag,
    opposite, power, quadratic_extension, quaternions, reals, tensor_product, FiniteGroup, GroupAction,
};
use twistk_core::exact::{self, format_rat, parse_rat, Mat, Rat, RatParseError, Vector};
use twistk_core::involutions::{AntiInvolutionMap, InvolutionMap};
use twistk_core::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Int(i64),
    Rat(Rat),
    Sym(String),
    Call(String, Vec<Term>),
    List(Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Construct(Term),
    Raw { structure: Vec<Vec<Vector>>, unit: Vector, labels: Option<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub source: Source,
    pub involution: Option<Term>,
    pub anti_involution: Option<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecError {
    /// Malformed JSON.
    Parse { line: usize, column: usize, message: String },
    /// Well-formed JSON that does not describe a valid algebra. `context` is
    /// a path into the document, `kind` the name of the underlying error.
    Validation { context: String, kind: String, message: String },
}

impl SpecError {
    fn invalid(context: &str, message: impl Into<String>) -> Self {
        SpecError::Validation { context: context.to_string(), kind: "InvalidSpec".into(), message: message.into() }
    }

    fn core(context: &str, e: Error) -> Self {
        SpecError::Validation { context: context.to_string(), kind: error_kind(&e), message: e.to_string() }
    }

    pub fn kind(&self) -> &str {
        match self {
            SpecError::Parse { .. } => "ParseError",
            SpecError::Validation { kind, .. } => kind,
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Parse { line, column, message } => write!(f, "parse error at {line}:{column}: {message}"),
            SpecError::Validation { context, kind, message } => write!(f, "{kind} at {context}: {message}"),
        }
    }
}

impl std::error::Error for SpecError {}

/// The variant name of a core error, e.g. `NotAssociative`.
pub fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec, SpecError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| SpecError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    from_value(&value)
}

fn from_value(value: &Value) -> Result<AlgebraSpec, SpecError> {
    let obj = value.as_object().ok_or_else(|| SpecError::invalid("$", "a spec must be a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "construct" | "structure" | "unit" | "labels" | "involution" | "anti_involution") {
            return Err(SpecError::invalid("$", format!("unknown key {key:?}")));
        }
    }
    let source = match (obj.get("construct"), obj.get("structure")) {
        (Some(c), None) => Source::Construct(term(c, "$.construct")?),
        (None, Some(s)) => raw_source(s, obj.get("unit"), obj.get("labels"))?,
        _ => return Err(SpecError::invalid("$", "exactly one of \"construct\" and \"structure\" is required")),
    };
    let optional = |key: &str| obj.get(key).map(|v| term(v, &format!("$.{key}"))).transpose();
    Ok(AlgebraSpec { source, involution: optional("involution")?, anti_involution: optional("anti_involution")? })
}

fn rational(v: &Value, ctx: &str) -> Result<Rat, SpecError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(exact::int)
            .ok_or_else(|| SpecError::invalid(ctx, "only integers may be written as JSON numbers; use \"p/q\"")),
        Value::String(s) => parse_rat(s).map_err(|e| SpecError::invalid(ctx, e.to_string())),
        _ => Err(SpecError::invalid(ctx, "expected a rational")),
    }
}

fn rational_vector(v: &Value, ctx: &str) -> Result<Vector, SpecError> {
    let items = v.as_array().ok_or_else(|| SpecError::invalid(ctx, "expected an array of rationals"))?;
    items.iter().enumerate().map(|(i, x)| rational(x, &format!("{ctx}[{i}]"))).collect()
}

fn raw_source(s: &Value, unit: Option<&Value>, labels: Option<&Value>) -> Result<Source, SpecError> {
    let rows = s.as_array().ok_or_else(|| SpecError::invalid("$.structure", "expected an n x n array"))?;
    let structure = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let ctx = format!("$.structure[{i}]");
            let row = row.as_array().ok_or_else(|| SpecError::invalid(&ctx, "expected an array"))?;
            row.iter().enumerate().map(|(j, v)| rational_vector(v, &format!("{ctx}[{j}]"))).collect()
        })
        .collect::<Result<Vec<Vec<Vector>>, _>>()?;
    let unit = rational_vector(unit.ok_or_else(|| SpecError::invalid("$", "raw structure needs \"unit\""))?, "$.unit")?;
    let labels = labels
        .map(|l| {
            let items = l.as_array().ok_or_else(|| SpecError::invalid("$.labels", "expected an array of strings"))?;
            items
                .iter()
                .map(|x| x.as_str().map(String::from).ok_or_else(|| SpecError::invalid("$.labels", "labels are strings")))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    Ok(Source::Raw { structure, unit, labels })
}

fn looks_numeric(s: &str) -> bool {
    let t = s.trim_start_matches(['+', '-']);
    t.starts_with(|c: char| c.is_ascii_digit())
}

fn term(v: &Value, ctx: &str) -> Result<Term, SpecError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Term::Int)
            .ok_or_else(|| SpecError::invalid(ctx, "only integers may be written as JSON numbers; use \"p/q\"")),
        Value::String(s) => match parse_rat(s) {
            Ok(r) => Ok(Term::Rat(r)),
            Err(RatParseError::ZeroDenominator) => Err(SpecError::invalid(ctx, format!("{s:?} has zero denominator"))),
            Err(e) if looks_numeric(s) => Err(SpecError::invalid(ctx, e.to_string())),
            Err(_) => Ok(Term::Sym(s.clone())),
        },
        Value::Array(items) => {
            let parts = items
                .iter()
                .enumerate()
                .map(|(i, x)| term(x, &format!("{ctx}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            match parts.split_first() {
                Some((Term::Sym(name), args)) => Ok(Term::Call(name.clone(), args.to_vec())),
                _ => Ok(Term::List(parts)),
            }
        }
        _ => Err(SpecError::invalid(ctx, "expected a number, string or array")),
    }
}

fn term_value(t: &Term) -> Value {
    match t {
        Term::Int(n) => json!(n),
        Term::Rat(r) => json!(format_rat(r)),
        Term::Sym(s) => json!(s),
        Term::Call(name, args) => {
            let mut v = vec![json!(name)];
            v.extend(args.iter().map(term_value));
            Value::Array(v)
        }
        Term::List(items) => Value::Array(items.iter().map(term_value).collect()),
    }
}

fn rat_values(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|r| json!(format_rat(r))).collect())
}

pub fn spec_value(spec: &AlgebraSpec) -> Value {
    let mut obj = Map::new();
    match &spec.source {
        Source::Construct(t) => {
            obj.insert("construct".into(), term_value(t));
        }
        Source::Raw { structure, unit, labels } => {
            let s = structure.iter().map(|row| Value::Array(row.iter().map(|v| rat_values(v)).collect())).collect();
            obj.insert("structure".into(), Value::Array(s));
            obj.insert("unit".into(), rat_values(unit));
            if let Some(l) = labels {
                obj.insert("labels".into(), json!(l));
            }
        }
    }
    if let Some(t) = &spec.involution {
        obj.insert("involution".into(), term_value(t));
    }
    if let Some(t) = &spec.anti_involution {
        obj.insert("anti_involution".into(), term_value(t));
    }
    Value::Object(obj)
}

/// Canonical one-line JSON; `parse_spec(&print_spec(s)) == Ok(s)`.
pub fn print_spec(spec: &AlgebraSpec) -> String {
    spec_value(spec).to_string()
}

/// An evaluated algebra expression, with what the spec language can still
/// refer to.
#[derive(Clone, Debug)]
struct Node {
    algebra: Algebra,
    canonical: Option<InvolutionMap>,
    matrix_over: Option<(Box<Node>, usize)>,
}

impl Node {
    fn plain(algebra: Algebra) -> Self {
        Node { algebra, canonical: None, matrix_over: None }
    }
}

/// A spec evaluated to validated core values.
#[derive(Clone, Debug)]
pub struct Built {
    pub algebra: Algebra,
    pub involution: Option<InvolutionMap>,
    pub anti_involution: Option<AntiInvolutionMap>,
}

pub fn build(spec: &AlgebraSpec) -> Result<Built, SpecError> {
    let node = match &spec.source {
        Source::Construct(t) => algebra_node(t, "$.construct")?,
        Source::Raw { structure, unit, labels } => {
            let n = structure.len();
            let labels = labels.clone().unwrap_or_else(|| (0..n).map(|i| format!("b{i}")).collect());
            Node::plain(Algebra::new(structure, unit.clone(), labels).map_err(|e| SpecError::core("$.structure", e))?)
        }
    };
    let involution = spec.involution.as_ref().map(|t| involution(t, &node, "$.involution")).transpose()?;
    let anti_involution = spec.anti_involution.as_ref().map(|t| anti(t, &node, "$.anti_involution")).transpose()?;
    Ok(Built { algebra: node.algebra, involution, anti_involution })
}

fn count(t: &Term, ctx: &str) -> Result<usize, SpecError> {
    match t {
        Term::Int(n) if *n >= 0 => Ok(*n as usize),
        _ => Err(SpecError::invalid(ctx, "expected a nonnegative integer")),
    }
}

fn integer(t: &Term, ctx: &str) -> Result<i64, SpecError> {
    match t {
        Term::Int(n) => Ok(*n),
        _ => Err(SpecError::invalid(ctx, "expected an integer")),
    }
}

fn scalar(t: &Term, ctx: &str) -> Result<Rat, SpecError> {
    match t {
        Term::Int(n) => Ok(exact::int(*n)),
        Term::Rat(r) => Ok(r.clone()),
        _ => Err(SpecError::invalid(ctx, "expected a rational")),
    }
}

fn arity(name: &str, args: &[Term], n: usize, ctx: &str) -> Result<(), SpecError> {
    if args.len() != n {
        return Err(SpecError::invalid(ctx, format!("{name} takes {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn group(t: &Term, ctx: &str) -> Result<FiniteGroup, SpecError> {
    match t {
        Term::Sym(s) if s == "z2" => Ok(FiniteGroup::z2()),
        Term::Sym(s) if s == "klein_four" => Ok(FiniteGroup::klein_four()),
        Term::Sym(s) if s == "s3" => Ok(FiniteGroup::symmetric3()),
        Term::Call(name, args) if name == "cyclic" => {
            arity(name, args, 1, ctx)?;
            let n = count(&args[0], &format!("{ctx}[1]"))?;
            if n == 0 {
                return Err(SpecError::invalid(ctx, "cyclic group order must be positive"));
            }
            Ok(FiniteGroup::cyclic(n))
        }
        _ => Err(SpecError::invalid(ctx, "expected a group: z2, klein_four, s3 or [\"cyclic\", n]")),
    }
}

fn algebra_node(t: &Term, ctx: &str) -> Result<Node, SpecError> {
    let (name, args): (&str, &[Term]) = match t {
        Term::Sym(s) => (s, &[]),
        Term::Call(name, args) => (name, args),
        _ => return Err(SpecError::invalid(ctx, "expected an algebra expression")),
    };
    let arg = |i: usize| format!("{ctx}[{}]", i + 1);
    let node = match name {
        "reals" | "complex" | "quaternions" | "dual_numbers" => {
            arity(name, args, 0, ctx)?;
            Node::plain(match name {
                "reals" => reals(),
                "complex" => complex(),
                "quaternions" => quaternions(),
                _ => dual_numbers(),
            })
        }
        "clifford" => {
            arity(name, args, 2, ctx)?;
            let (p, q) = (count(&args[0], &arg(0))?, count(&args[1], &arg(1))?);
            if p + q > 6 {
                return Err(SpecError::invalid(ctx, "clifford rank is limited to p + q <= 6"));
            }
            let (a, tau) = clifford(p, q);
            Node { algebra: a, canonical: Some(tau), matrix_over: None }
        }
        "quadratic" => {
            arity(name, args, 1, ctx)?;
            let eps = integer(&args[0], &arg(0))?;
            if eps != 1 && eps != -1 {
                return Err(SpecError::invalid(&arg(0), "epsilon must be 1 or -1"));
            }
            Node::plain(quadratic_extension(eps))
        }
        "matrix" => {
            arity(name, args, 2, ctx)?;
            let base = algebra_node(&args[0], &arg(0))?;
            let n = count(&args[1], &arg(1))?;
            if n == 0 {
                return Err(SpecError::invalid(&arg(1), "matrix size must be positive"));
            }
            Node { algebra: matrix_algebra(&base.algebra, n), canonical: None, matrix_over: Some((Box::new(base), n)) }
        }
        "group_algebra" => {
            arity(name, args, 1, ctx)?;
            Node::plain(group_algebra(&group(&args[0], &arg(0))?))
        }
        "direct_product" | "tensor" => {
            arity(name, args, 2, ctx)?;
            let (a, b) = (algebra_node(&args[0], &arg(0))?, algebra_node(&args[1], &arg(1))?);
            Node::plain(if name == "tensor" {
                tensor_product(&a.algebra, &b.algebra)
            } else {
                direct_product(&a.algebra, &b.algebra)
            })
        }
        "power" => {
            arity(name, args, 2, ctx)?;
            let a = algebra_node(&args[0], &arg(0))?;
            Node::plain(power(&a.algebra, count(&args[1], &arg(1))?))
        }
        "opposite" => {
            arity(name, args, 1, ctx)?;
            Node::plain(opposite(&algebra_node(&args[0], &arg(0))?.algebra))
        }
        "crossed_product" => {
            arity(name, args, 2, ctx)?;
            let a = algebra_node(&args[0], &arg(0))?;
            let tau = involution(&args[1], &a, &arg(1))?;
            Node::plain(crossed_product(&GroupAction::from_involution(&tau)).result)
        }
        other => return Err(SpecError::invalid(ctx, format!("unknown constructor {other:?}"))),
    };
    Ok(node)
}

fn element(t: &Term, node: &Node, ctx: &str) -> Result<Vector, SpecError> {
    let a = &node.algebra;
    match t {
        Term::Sym(label) => a
            .find_label(label)
            .map(|i| a.basis(i))
            .ok_or_else(|| SpecError::invalid(ctx, format!("no basis element labelled {label:?}"))),
        Term::Int(_) | Term::Rat(_) => Ok(exact::scale(a.unit(), &scalar(t, ctx)?)),
        Term::List(items) => {
            if items.len() != a.dim() {
                return Err(SpecError::invalid(ctx, format!("expected {} coordinates, got {}", a.dim(), items.len())));
            }
            items.iter().enumerate().map(|(i, x)| scalar(x, &format!("{ctx}[{i}]"))).collect()
        }
        Term::Call(name, args) if name == "diag" => {
            let (base, n) =
                node.matrix_over.as_ref().ok_or_else(|| SpecError::invalid(ctx, "diag needs a matrix algebra"))?;
            arity(name, args, *n, ctx)?;
            let d = args.iter().enumerate().map(|(i, x)| scalar(x, &format!("{ctx}[{}]", i + 1))).collect::<Result<Vec<_>, _>>()?;
            Ok(matrix_diag(&base.algebra, &d))
        }
        _ => Err(SpecError::invalid(ctx, "expected an element: a label, a scalar, coordinates or [\"diag\", ...]")),
    }
}

fn matrix_rows(args: &[Term], n: usize, ctx: &str) -> Result<Mat, SpecError> {
    if args.len() != n {
        return Err(SpecError::invalid(ctx, format!("expected {n} rows")));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, r) in args.iter().enumerate() {
        let rctx = format!("{ctx}[{}]", i + 1);
        let Term::List(items) = r else {
            return Err(SpecError::invalid(&rctx, "expected a row of rationals"));
        };
        if items.len() != n {
            return Err(SpecError::invalid(&rctx, format!("expected {n} entries")));
        }
        rows.push(items.iter().map(|x| scalar(x, &rctx)).collect::<Result<Vector, _>>()?);
    }
    Ok(Mat::from_rows(rows))
}

fn involution(t: &Term, node: &Node, ctx: &str) -> Result<InvolutionMap, SpecError> {
    let a = &node.algebra;
    match t {
        Term::Sym(s) if s == "identity" => Ok(InvolutionMap::identity(a)),
        Term::Sym(s) if s == "canonical" => {
            node.canonical.clone().ok_or_else(|| SpecError::invalid(ctx, "only Clifford algebras have a canonical involution"))
        }
        Term::Sym(s) if s == "conjugation" => {
            let d: Vector = (0..a.dim()).map(|i| exact::int(if i == 0 { 1 } else { -1 })).collect();
            InvolutionMap::new(a, Mat::diagonal(&d)).map_err(|e| SpecError::core(ctx, e))
        }
        Term::Call(name, args) if name == "conj_by" || name == "z2_conj_by" => {
            arity(name, args, 1, ctx)?;
            let u = element(&args[0], node, &format!("{ctx}[1]"))?;
            InvolutionMap::conjugation(a, &u).map_err(|e| SpecError::core(ctx, e))
        }
        Term::Call(name, args) if name == "matrix" => {
            InvolutionMap::new(a, matrix_rows(args, a.dim(), ctx)?).map_err(|e| SpecError::core(ctx, e))
        }
        _ => Err(SpecError::invalid(ctx, "expected an involution: identity, canonical, conjugation, [\"conj_by\", x] or [\"matrix\", rows...]")),
    }
}

fn anti(t: &Term, node: &Node, ctx: &str) -> Result<AntiInvolutionMap, SpecError> {
    let a = &node.algebra;
    match t {
        Term::Sym(s) if s == "identity" => AntiInvolutionMap::identity(a).map_err(|e| SpecError::core(ctx, e)),
        Term::Sym(s) if s == "conjugation" => {
            AntiInvolutionMap::standard_conjugation(a).map_err(|e| SpecError::core(ctx, e))
        }
        Term::Call(name, args) if name == "conjugate_transpose" => {
            arity(name, args, 1, ctx)?;
            let (base, n) = node
                .matrix_over
                .as_ref()
                .ok_or_else(|| SpecError::invalid(ctx, "conjugate_transpose needs a matrix algebra"))?;
            let star = anti(&args[0], base, &format!("{ctx}[1]"))?;
            AntiInvolutionMap::conjugate_transpose(&star, *n).map_err(|e| SpecError::core(ctx, e))
        }
        Term::Call(name, args) if name == "matrix" => {
            AntiInvolutionMap::new(a, matrix_rows(args, a.dim(), ctx)?).map_err(|e| SpecError::core(ctx, e))
        }
        _ => Err(SpecError::invalid(ctx, "expected an anti-involution: identity, conjugation, [\"conjugate_transpose\", star] or [\"matrix\", rows...]")),
    }
}

/// Parses a JSON square matrix whose entries are elements of `a`: labels,
/// scalars or coordinate arrays.
pub fn parse_gram(text: &str, a: &Algebra) -> Result<Vec<Vec<Vector>>, SpecError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| SpecError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let node = Node::plain(a.clone());
    let rows = value.as_array().ok_or_else(|| SpecError::invalid("$", "expected a square array"))?;
    let n = rows.len();
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let ctx = format!("$[{i}]");
            let row = row.as_array().filter(|r| r.len() == n).ok_or_else(|| SpecError::invalid(&ctx, format!("expected {n} entries")))?;
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let ctx = format!("{ctx}[{j}]");
                    element(&term(x, &ctx)?, &node, &ctx)
                })
                .collect()
        })
        .collect()
}

/// Named specs accepted wherever a spec is expected.
pub fn preset(name: &str) -> Option<String> {
    let text = match name {
        "hquat-conj-i" => r#"{"construct": "quaternions", "involution": ["conj_by", "i"]}"#.to_string(),
        "m4r-diag111m1" => {
            r#"{"construct": ["matrix", "reals", 4], "involution": ["conj_by", ["diag", 1, 1, 1, -1]]}"#.to_string()
        }
        "m2r-diag1m1" => r#"{"construct": ["matrix", "reals", 2], "involution": ["conj_by", ["diag", 1, -1]]}"#.to_string(),
        "m2c-diag1m1" => {
            r#"{"construct": ["matrix", "complex", 2], "involution": ["conj_by", ["diag", 1, -1]]}"#.to_string()
        }
        "complex-conj" => r#"{"construct": "complex", "involution": "conjugation", "anti_involution": "conjugation"}"#.to_string(),
        "reals" => r#"{"construct": "reals", "involution": "identity", "anti_involution": "identity"}"#.to_string(),
        "hquat-conj" => r#"{"construct": "quaternions", "anti_involution": "conjugation"}"#.to_string(),
        "c02" => r#"{"construct": ["clifford", 0, 2], "involution": "canonical"}"#.to_string(),
        "c11" => r#"{"construct": ["clifford", 1, 1], "involution": "canonical"}"#.to_string(),
        "nonassoc-example" => {
            let structure = twistk_core::constructions::octonion_structure();
            let unit: Vector = exact::basis_vector(8, 0);
            let spec = AlgebraSpec {
                source: Source::Raw { structure, unit, labels: Some(twistk_core::constructions::octonion_labels()) },
                involution: None,
                anti_involution: None,
            };
            print_spec(&spec)
        }
        _ => return None,
    };
    Some(text)
}

pub const PRESETS: [&str; 10] = [
    "hquat-conj-i",
    "m4r-diag111m1",
    "m2r-diag1m1",
    "m2c-diag1m1",
    "complex-conj",
    "reals",
    "hquat-conj",
    "c02",
    "c11",
    "nonassoc-example",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = parse_spec(r#"{"construct": ["clifford", 0, 2]}"#).unwrap();
        assert_eq!(build(&s).unwrap().algebra.dim(), 4);
        let s = parse_spec(r#"{"construct": ["quaternions"], "involution": ["conj_by", "i"]}"#).unwrap();
        assert!(build(&s).unwrap().involution.is_some());
        let e = parse_spec(r#"{"structure": [[["1/0"]]], "unit": ["1"]}"#).unwrap_err();
        assert!(matches!(e, SpecError::Validation { .. }), "{e}");
        let e = parse_spec("{\n  \"construct\": [\"reals\",\n}").unwrap_err();
        assert!(matches!(e, SpecError::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn nonassociative_preset_fails_validation() {
        let s = parse_spec(&preset("nonassoc-example").unwrap()).unwrap();
        assert_eq!(build(&s).unwrap_err().kind(), "NotAssociative");
    }

    #[test]
    fn presets_round_trip() {
        for name in PRESETS {
            let s = parse_spec(&preset(name).unwrap()).unwrap();
            assert_eq!(parse_spec(&print_spec(&s)).unwrap(), s, "{name}");
        }
    }
}
