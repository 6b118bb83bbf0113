//! Subcommand bodies. Each returns an [`Outcome`] carrying the exit code and
//! both renderings of the report.

use std::fmt::Write as _;
use std::path::Path;

use pseudoalg::json::{dump_vector, read_file, AlgebraData, AlgebraFile, PseudoFile, RepFile};
use pseudoalg::lie::{build_symplectic, check_traceform};
use pseudoalg::pmodules::{
    admissible_t_space, ker_solver, singular_vectors, tensor_module_unchecked, twisted_module_unchecked, verify_action,
    AdmissibleSpace,
};
use pseudoalg::rational::format_q;
use pseudoalg::uea::tensor2;
use pseudoalg::{Error, HElement, HTensor, MultiIndex, PseudoAlgebra, PseudoModule, Report, Uea, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(pass: bool, text: String, mut json: Value) -> Self {
        json["status"] = json!(if pass { "pass" } else { "fail" });
        Self {
            code: if pass { 0 } else { 1 },
            text,
            json,
        }
    }

    /// Failed constructions count as mathematical failures; anything that
    /// stops us from reading the input is an input error.
    pub fn from_error(e: &Error) -> Self {
        let math = matches!(
            e,
            Error::Identity(_) | Error::Cocycle { .. } | Error::Degenerate(_) | Error::Closure(_)
        );
        let (code, status) = if math { (1, "fail") } else { (2, "input-error") };
        Self {
            code,
            text: format!("{}: {e}\n", if math { "FAIL" } else { "error" }),
            json: json!({ "status": status, "error": e.to_string() }),
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn fmt_vec(v: &[Q]) -> Vec<String> {
    v.iter().map(format_q).collect()
}

fn load_algebra(path: &Path) -> Result<AlgebraData, Error> {
    read_file::<AlgebraFile>(path)?.parse()
}

fn load_pseudo(algebra: &Path, pseudo: &Path) -> Result<(AlgebraData, PseudoAlgebra), Error> {
    let data = load_algebra(algebra)?;
    let a = read_file::<PseudoFile>(pseudo)?.build(&data)?;
    Ok((data, a))
}

fn write_report(out: &mut String, title: &str, r: &Report) {
    let _ = writeln!(
        out,
        "{title}: {} ({} checked, {} residual(s))",
        verdict(r.is_empty()),
        r.checked,
        r.residuals.len()
    );
    for res in &r.residuals {
        let _ = writeln!(out, "  {} [{} term(s)]", res.label, res.terms);
        for s in &res.sample {
            let _ = writeln!(out, "    {s}");
        }
    }
}

pub fn validate(path: &Path) -> Result<Outcome, Error> {
    let data = load_algebra(path)?;
    let mut text = String::new();
    let violations: Vec<String> = data.violations()?.iter().map(ToString::to_string).collect();
    let lie_ok = violations.is_empty();
    let _ = writeln!(text, "structure constants: {}", verdict(lie_ok));
    for v in &violations {
        let _ = writeln!(text, "  {v}");
    }
    let mut report = json!({ "command": "validate", "lie_violations": violations });
    if !lie_ok {
        return Ok(Outcome::new(false, text, report));
    }

    let pair = match data.pair() {
        Ok(p) => p,
        Err(e @ Error::Closure(_)) => {
            let _ = writeln!(text, "subalgebra: FAIL ({e})");
            report["subalgebra"] = json!(e.to_string());
            return Ok(Outcome::new(false, text, report));
        }
        Err(e) => return Err(e),
    };
    let d = pair.small();
    let mut pass = true;
    if pair.offset() > 0 {
        let _ = writeln!(text, "subalgebra: d = span of the last {} basis vectors", d.dim());
    }
    let chi = data.chi.clone();
    if let Some(chi) = &chi {
        if chi.len() != d.dim() {
            return Err(Error::Shape(format!("chi must have length {}", d.dim())));
        }
        let ok = check_traceform(&d, chi);
        pass &= ok;
        let _ = writeln!(text, "traceform chi: {}", verdict(ok));
        report["traceform"] = json!(ok);
    }
    if let Some(omega) = &data.omega {
        let chi = chi.unwrap_or_else(|| vec![Q::from_integer(0.into()); d.dim()]);
        match build_symplectic(&d, omega, &chi) {
            Ok(sd) => {
                let _ = writeln!(text, "symplectic data: PASS");
                let _ = writeln!(text, "  s = [{}]", fmt_vec(&sd.s).join(", "));
                report["symplectic"] = json!({
                    "ok": true,
                    "s": fmt_vec(&sd.s),
                    "r": sd.r.iter().map(|row| fmt_vec(row)).collect::<Vec<_>>(),
                });
            }
            Err(e @ (Error::Cocycle { .. } | Error::Degenerate(_))) => {
                pass = false;
                let _ = writeln!(text, "symplectic data: FAIL ({e})");
                report["symplectic"] = json!({ "ok": false, "error": e.to_string() });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Outcome::new(pass, text, report))
}

fn random_element<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> HElement {
    let mut h = HElement::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=max_deg) {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = Q::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into());
        h.add_term(MultiIndex::from_slice(&e).expect("dimension checked on load"), c);
    }
    h
}

/// Names of the Hopf identities that fail on `f` (and `f g`).
fn hopf_failures(h: &Uea, f: &HElement, g: &HElement) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let df = h.coproduct(f);
    let eps = h.scalar(h.counit(f));
    let (mut s_left, mut s_right, mut c_left, mut c_right) =
        (HElement::new(), HElement::new(), HElement::new(), HElement::new());
    for ([a, b], c) in &df {
        let (ma, mb) = (h.monomial(*a), h.monomial(*b));
        s_left.add_scaled(&h.mul(&h.antipode(&ma), &mb), c);
        s_right.add_scaled(&h.mul(&ma, &h.antipode(&mb)), c);
        c_left.add_scaled(&mb, &(c * h.counit(&ma)));
        c_right.add_scaled(&ma, &(c * h.counit(&mb)));
    }
    if s_left != eps || s_right != eps {
        bad.push("antipode");
    }
    if &c_left != f || &c_right != f {
        bad.push("counit");
    }
    if h.coproduct(&h.mul(f, g)) != h.tensor_mul(&df, &h.coproduct(g)) {
        bad.push("coproduct multiplicative");
    }
    if df.map_keys(|[a, b]| [*b, *a]) != df {
        bad.push("cocommutative");
    }
    let mut lhs = HTensor::<3>::new();
    for ([a, b], c) in &df {
        for ([x, y], e) in &h.coproduct(&h.monomial(*a)) {
            lhs.add_term([*x, *y, *b], c * e);
        }
    }
    if lhs != h.coproduct3(f) {
        bad.push("coassociative");
    }
    let mut cou2 = HTensor::<2>::new();
    for ([a, b, c3], c) in &h.coproduct3(f) {
        let head = h.mul(&h.antipode(&h.monomial(*a)), &h.monomial(*b));
        cou2.add_scaled(&tensor2(&head, &h.monomial(*c3)), c);
    }
    if cou2 != tensor2(&h.one(), f) {
        bad.push("counit-antipode");
    }
    bad
}

pub fn hopf(path: &Path, degree: u32, seed: u64, samples: usize) -> Result<Outcome, Error> {
    let data = load_algebra(path)?;
    let h = Uea::new(data.big()?)?;
    let n = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..samples {
        let f = random_element(&mut rng, n, degree);
        let g = random_element(&mut rng, n, degree.min(2));
        for name in hopf_failures(&h, &f, &g) {
            failures.push(json!({ "sample": i, "identity": name, "element": Uea::format(&f) }));
        }
    }
    let pass = failures.is_empty();
    let mut text = format!(
        "Hopf identities on {samples} samples (seed {seed}, degree <= {degree}): {}\n",
        verdict(pass)
    );
    for f in &failures {
        let _ = writeln!(
            text,
            "  sample {}: {} fails on {}",
            f["sample"], f["identity"], f["element"]
        );
    }
    let report = json!({ "command": "hopf", "seed": seed, "samples": samples, "degree": degree, "failures": failures });
    Ok(Outcome::new(pass, text, report))
}

pub fn verify_algebra(algebra: &Path, pseudo: &Path) -> Result<Outcome, Error> {
    let (_, a) = load_pseudo(algebra, pseudo)?;
    let skew = pseudoalg::pseudo::verify_skew(&a);
    let jacobi = pseudoalg::pseudo::verify_jacobi(&a);
    let pass = skew.is_empty() && jacobi.is_empty();
    let mut text = format!("{} with {} generator(s)\n", a.tag(), a.generators().len());
    write_report(&mut text, "skew-symmetry", &skew);
    write_report(&mut text, "Jacobi identity", &jacobi);
    let report = json!({
        "command": "verify-algebra",
        "algebra": a.tag(),
        "skew": skew,
        "jacobi": jacobi,
    });
    Ok(Outcome::new(pass, text, report))
}

enum Loaded {
    Module(Box<PseudoModule>, Vec<String>),
    NotARep(Vec<String>),
}

fn load_module(algebra: &Path, pseudo: &Path, module: &Path) -> Result<Loaded, Error> {
    let (_, a) = load_pseudo(algebra, pseudo)?;
    let md = read_file::<RepFile>(module)?.parse(&a)?;
    md.rep.check_shape(&a)?;
    let bad = md.rep.violations(&a)?;
    if !bad.is_empty() && !md.unchecked {
        return Ok(Loaded::NotARep(bad));
    }
    let m = match &md.twist {
        Some(t) => twisted_module_unchecked(&a, &md.rep, t)?,
        None => tensor_module_unchecked(&a, &md.rep)?,
    };
    Ok(Loaded::Module(Box::new(m), bad))
}

fn not_a_rep(command: &str, bad: Vec<String>) -> Outcome {
    let mut text = "representation: FAIL\n".to_string();
    for b in &bad {
        let _ = writeln!(text, "  {b}");
    }
    text.push_str("  (set \"unchecked\": true to build the module anyway)\n");
    Outcome::new(false, text, json!({ "command": command, "rep_violations": bad }))
}

fn describe(m: &PseudoModule, bad: &[String]) -> String {
    let mut text = format!("{} acting on H (x) R, dim R = {}", m.algebra().tag(), m.dim_r());
    if let Some(t) = m.twist() {
        let _ = write!(text, ", twist t = [{}]", fmt_vec(t).join(", "));
    }
    text.push('\n');
    if !bad.is_empty() {
        let _ = writeln!(text, "note: R violates {} relation(s); built unchecked", bad.len());
    }
    text
}

pub fn verify_module(algebra: &Path, pseudo: &Path, module: &Path) -> Result<Outcome, Error> {
    let (m, bad) = match load_module(algebra, pseudo, module)? {
        Loaded::Module(m, bad) => (m, bad),
        Loaded::NotARep(bad) => return Ok(not_a_rep("verify-module", bad)),
    };
    let r = verify_action(&m);
    let mut text = describe(&m, &bad);
    write_report(&mut text, "module axiom", &r);
    let report = json!({
        "command": "verify-module",
        "algebra": m.algebra().tag(),
        "dim_r": m.dim_r(),
        "twist": m.twist().map(fmt_vec),
        "rep_violations": bad,
        "action": r,
    });
    Ok(Outcome::new(r.is_empty(), text, report))
}

pub fn admissible_t(algebra: &Path, pseudo: &Path) -> Result<Outcome, Error> {
    let (data, a) = load_pseudo(algebra, pseudo)?;
    let sd = a
        .symplectic()
        .ok_or_else(|| Error::Precondition(format!("{} has no symplectic data; twists need type H", a.tag())))?;
    let pair = a.pair();
    let labels = &data.labels;
    let (verdict, space) = if AdmissibleSpace::degenerate(pair) {
        ("degenerate: d' = d, there is no twist direction", None)
    } else {
        let s = admissible_t_space(pair, sd)?;
        let v = if s.exceptional() {
            "exceptional twisted modules exist"
        } else {
            "no exceptional modules: every admissible t lies in d"
        };
        (v, Some(s))
    };
    let mut text = String::new();
    let mut basis = Vec::new();
    if let Some(s) = &space {
        let _ = writeln!(text, "admissible t: dimension {} ({} inside d)", s.basis.len(), s.in_d);
        for v in &s.basis {
            let terms: Vec<String> = v
                .iter()
                .zip(labels)
                .filter(|(c, _)| !num_is_zero(c))
                .map(|(c, l)| format!("{} {l}", format_q(c)))
                .collect();
            let _ = writeln!(text, "  {}", terms.join(" + "));
            basis.push(fmt_vec(v));
        }
    }
    let _ = writeln!(text, "verdict: {verdict}");
    let report = json!({
        "command": "admissible-t",
        "algebra": a.tag(),
        "basis": basis,
        "in_d": space.as_ref().map(|s| s.in_d),
        "verdict": verdict,
    });
    Ok(Outcome::new(true, text, report))
}

fn num_is_zero(c: &Q) -> bool {
    *c == Q::from_integer(0.into())
}

pub fn singular(algebra: &Path, pseudo: &Path, module: &Path, degree: i64) -> Result<Outcome, Error> {
    let (m, bad) = match load_module(algebra, pseudo, module)? {
        Loaded::Module(m, bad) => (m, bad),
        Loaded::NotARep(bad) => return Ok(not_a_rep("singular", bad)),
    };
    let sing = singular_vectors(&m, degree);
    let ker = ker_solver(&m, degree);
    let mut text = describe(&m, &bad);
    let _ = writeln!(
        text,
        "degree <= {degree}: {} singular vector(s), kernel dimension {}",
        sing.len(),
        ker.len()
    );
    for (i, v) in sing.iter().enumerate() {
        let terms: Vec<String> = dump_vector(v, m.dim_r())
            .into_iter()
            .map(|t| {
                let k: Vec<String> = t.k.iter().map(ToString::to_string).collect();
                format!("d[{}] (x) [{}]", k.join(","), t.v.join(", "))
            })
            .collect();
        let _ = writeln!(text, "  s{}: {}", i + 1, terms.join(" + "));
    }
    let dump = |vs: &[pseudoalg::FreeVec]| vs.iter().map(|v| dump_vector(v, m.dim_r())).collect::<Vec<_>>();
    let report = json!({
        "command": "singular",
        "algebra": m.algebra().tag(),
        "degree": degree,
        "dim_r": m.dim_r(),
        "singular": dump(&sing),
        "kernel": dump(&ker),
    });
    Ok(Outcome::new(true, text, report))
}
