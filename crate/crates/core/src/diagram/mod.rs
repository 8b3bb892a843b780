//! A textual language for wire diagrams.
//!
//! Expressions describe tensor networks read left to right: `;` composes
//! sequentially (output wires of the left piece feed the input wires of the
//! right piece) and `*` stacks pieces in parallel, binding tighter than `;`.
//! The primitives are `id(d)`, `cup(d)` (creates a pair of wires in the
//! unnormalized maximally entangled state), `cap(d)` (its mirror, which
//! joins and contracts two wires), and `swap(p,q)`; any other identifier is
//! a named tensor resolved through an [`Env`]. `#` starts a line comment.
//!
//! A diagram's type is the ordered list of wire dimensions entering and
//! leaving it. [`typecheck`] computes it, [`evaluate`] assembles the matrix
//! (a closed diagram yields a 1×1 scalar), [`print`] renders a canonical
//! form that reparses to the same tree, and [`equivalent`] decides whether
//! two diagrams denote the same tensor numerically — the executable form of
//! "the two pictures are equal".

mod parse;

pub use parse::parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::numeric::{sample, Mat, Seed, Tol};
use crate::wires;

/// Source position, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

/// A diagram expression. Equality is structural and ignores source spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    /// `id(d)`: a single wire of dimension `d`.
    Id(usize),
    /// `cup(d)`: no wires in, two wires of dimension `d` out.
    Cup(usize),
    /// `cap(d)`: two wires of dimension `d` in, no wires out.
    Cap(usize),
    /// `swap(p,q)`: crosses a `p`-wire over a `q`-wire.
    Swap(usize, usize),
    /// A tensor bound in the environment.
    Named(String),
    /// Left-to-right composition `left ; right`.
    Seq(Box<Expr>, Box<Expr>),
    /// Parallel stacking `top * bottom`.
    Tensor(Box<Expr>, Box<Expr>),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        self.kind == other.kind
    }
}

/// The ordered wire dimensions entering (`domain`) and leaving
/// (`codomain`) a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireType {
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
}

impl WireType {
    /// Total dimension of the input space (1 for no wires).
    pub fn domain_dim(&self) -> usize {
        self.domain.iter().product()
    }

    /// Total dimension of the output space (1 for no wires).
    pub fn codomain_dim(&self) -> usize {
        self.codomain.iter().product()
    }
}

impl fmt::Display for WireType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}",
            fmt_wires(&self.domain),
            fmt_wires(&self.codomain)
        )
    }
}

fn fmt_wires(wires: &[usize]) -> String {
    let inner: Vec<String> = wires.iter().map(|d| d.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

fn expected_list(expected: &[String]) -> String {
    match expected {
        [] => "nothing".to_string(),
        [only] => only.clone(),
        [first, second] => format!("{first} or {second}"),
        [init @ .., last] => format!("{}, or {last}", init.join(", ")),
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DiagramError {
    #[error("{line}:{col}: {message}")]
    Lex {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: expected {}, found {found}", expected_list(.expected))]
    Syntax {
        line: usize,
        col: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{line}:{col}: wire dimension must be a positive integer")]
    NonPositiveDim { line: usize, col: usize },
    #[error("{line}:{col}: unbound tensor name '{name}'")]
    Unbound {
        name: String,
        line: usize,
        col: usize,
    },
    #[error(
        "{line}:{col}: cannot compose: left side produces wires {} but right side consumes {}",
        fmt_wires(.left),
        fmt_wires(.right)
    )]
    Composition {
        left: Vec<usize>,
        right: Vec<usize>,
        line: usize,
        col: usize,
    },
    #[error("sides have different wire types: {lhs} versus {rhs}")]
    SideMismatch { lhs: WireType, rhs: WireType },
    #[error("binding '{name}': {reason}")]
    Binding { name: String, reason: String },
}

/// A named tensor: a matrix together with the wire lists it acts between.
/// The matrix shape is `codomain_dim × domain_dim`.
#[derive(Clone, Debug)]
pub struct Binding {
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    pub matrix: Mat,
}

/// Tensor bindings for named identifiers. Names follow the identifier
/// grammar and may not shadow the four primitives.
#[derive(Clone, Debug, Default)]
pub struct Env {
    bindings: BTreeMap<String, Binding>,
}

const RESERVED: [&str; 4] = ["id", "cup", "cap", "swap"];

fn is_valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn bind(
        &mut self,
        name: &str,
        domain: Vec<usize>,
        codomain: Vec<usize>,
        matrix: Mat,
    ) -> Result<(), DiagramError> {
        let err = |reason: String| DiagramError::Binding {
            name: name.to_string(),
            reason,
        };
        if !is_valid_ident(name) {
            return Err(err("not a valid identifier".to_string()));
        }
        if RESERVED.contains(&name) {
            return Err(err(
                "'id', 'cup', 'cap', and 'swap' are reserved".to_string()
            ));
        }
        if self.bindings.contains_key(name) {
            return Err(err("already bound".to_string()));
        }
        if domain.contains(&0) || codomain.contains(&0) {
            return Err(err("wire dimensions must be positive".to_string()));
        }
        let rows: usize = codomain.iter().product();
        let cols: usize = domain.iter().product();
        if (matrix.rows(), matrix.cols()) != (rows, cols) {
            return Err(err(format!(
                "matrix must be {rows}×{cols} for codomain {} and domain {}, got {}×{}",
                fmt_wires(&codomain),
                fmt_wires(&domain),
                matrix.rows(),
                matrix.cols()
            )));
        }
        self.bindings.insert(
            name.to_string(),
            Binding {
                domain,
                codomain,
                matrix,
            },
        );
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings.get(name)
    }
}

/// Computes the wire type of an expression, rejecting unbound names and
/// composition mismatches (reported at the offending `;`).
pub fn typecheck(expr: &Expr, env: &Env) -> Result<WireType, DiagramError> {
    match &expr.kind {
        ExprKind::Id(d) => Ok(WireType {
            domain: vec![*d],
            codomain: vec![*d],
        }),
        ExprKind::Cup(d) => Ok(WireType {
            domain: vec![],
            codomain: vec![*d, *d],
        }),
        ExprKind::Cap(d) => Ok(WireType {
            domain: vec![*d, *d],
            codomain: vec![],
        }),
        ExprKind::Swap(p, q) => Ok(WireType {
            domain: vec![*p, *q],
            codomain: vec![*q, *p],
        }),
        ExprKind::Named(name) => match env.get(name) {
            Some(binding) => Ok(WireType {
                domain: binding.domain.clone(),
                codomain: binding.codomain.clone(),
            }),
            None => Err(DiagramError::Unbound {
                name: name.clone(),
                line: expr.span.line,
                col: expr.span.col,
            }),
        },
        ExprKind::Seq(left, right) => {
            let tl = typecheck(left, env)?;
            let tr = typecheck(right, env)?;
            if tl.codomain != tr.domain {
                return Err(DiagramError::Composition {
                    left: tl.codomain,
                    right: tr.domain,
                    line: expr.span.line,
                    col: expr.span.col,
                });
            }
            Ok(WireType {
                domain: tl.domain,
                codomain: tr.codomain,
            })
        }
        ExprKind::Tensor(top, bottom) => {
            let tt = typecheck(top, env)?;
            let tb = typecheck(bottom, env)?;
            let mut domain = tt.domain;
            domain.extend(tb.domain);
            let mut codomain = tt.codomain;
            codomain.extend(tb.codomain);
            Ok(WireType { domain, codomain })
        }
    }
}

/// Assembles the matrix of a diagram: primitives come from the same kernels
/// as the rest of the crate (`wires::cup`/`cap`/`swap`, `Mat::identity`),
/// `;` multiplies right-after-left, `*` takes Kronecker products. A closed
/// diagram evaluates to a 1×1 scalar.
pub fn evaluate(expr: &Expr, env: &Env) -> Result<Mat, DiagramError> {
    typecheck(expr, env)?;
    Ok(eval_checked(expr, env))
}

fn eval_checked(expr: &Expr, env: &Env) -> Mat {
    match &expr.kind {
        ExprKind::Id(d) => Mat::identity(*d),
        ExprKind::Cup(d) => wires::cup(*d).expect("dimension validated").as_column(),
        ExprKind::Cap(d) => wires::cap(*d).expect("dimension validated"),
        ExprKind::Swap(p, q) => wires::swap(*p, *q).expect("dimensions validated"),
        ExprKind::Named(name) => env.get(name).expect("typechecked").matrix.clone(),
        ExprKind::Seq(left, right) => eval_checked(right, env).mul(&eval_checked(left, env)),
        ExprKind::Tensor(top, bottom) => eval_checked(top, env).kron(&eval_checked(bottom, env)),
    }
}

/// Renders the canonical text of an expression; `parse(print(e))`
/// reconstructs `e` up to spans. Parentheses appear only where precedence
/// or association requires them.
pub fn print(expr: &Expr) -> String {
    fn prec(kind: &ExprKind) -> u8 {
        match kind {
            ExprKind::Seq(..) => 0,
            ExprKind::Tensor(..) => 1,
            _ => 2,
        }
    }
    fn go(expr: &Expr, min_prec: u8, out: &mut String) {
        let wrap = prec(&expr.kind) < min_prec;
        if wrap {
            out.push('(');
        }
        match &expr.kind {
            ExprKind::Id(d) => out.push_str(&format!("id({d})")),
            ExprKind::Cup(d) => out.push_str(&format!("cup({d})")),
            ExprKind::Cap(d) => out.push_str(&format!("cap({d})")),
            ExprKind::Swap(p, q) => out.push_str(&format!("swap({p},{q})")),
            ExprKind::Named(name) => out.push_str(name),
            ExprKind::Seq(left, right) => {
                go(left, 0, out);
                out.push(';');
                go(right, 1, out);
            }
            ExprKind::Tensor(top, bottom) => {
                go(top, 1, out);
                out.push('*');
                go(bottom, 2, out);
            }
        }
        if wrap {
            out.push(')');
        }
    }
    let mut out = String::new();
    go(expr, 0, &mut out);
    out
}

/// Result of a numerical equivalence check between two diagrams.
#[derive(Clone, Copy, Debug)]
pub struct Equivalence {
    pub equivalent: bool,
    pub max_abs_diff: f64,
    pub threshold: f64,
}

/// Decides whether two diagrams denote the same tensor: both must typecheck
/// to the same wire type (otherwise [`DiagramError::SideMismatch`]), then
/// their matrices are compared entrywise against `tol` at the scale of the
/// larger entry.
pub fn equivalent(
    lhs: &Expr,
    rhs: &Expr,
    env: &Env,
    tol: Tol,
) -> Result<Equivalence, DiagramError> {
    let tl = typecheck(lhs, env)?;
    let tr = typecheck(rhs, env)?;
    if tl != tr {
        return Err(DiagramError::SideMismatch { lhs: tl, rhs: tr });
    }
    let ml = eval_checked(lhs, env);
    let mr = eval_checked(rhs, env);
    let max_abs_diff = ml.max_abs_diff(&mr);
    let threshold = tol.threshold(ml.max_abs().max(mr.max_abs()));
    Ok(Equivalence {
        equivalent: max_abs_diff <= threshold,
        max_abs_diff,
        threshold,
    })
}

/// Outcome of one named identity across all its dimension combinations and
/// sampled tensors.
#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub cases: u32,
    pub max_abs_diff: f64,
    pub all_equivalent: bool,
}

/// Checks the built-in diagrammatic identities over every dimension
/// combination from `dims`, drawing `samples` random tensors per
/// combination where an identity mentions one:
///
/// - `snake`: bending a wire through a cup and a cap straightens to the
///   identity (both bend directions);
/// - `swap-involution`: crossing two wires twice is no crossing;
/// - `cup-symmetry`: a cup is invariant under swapping its two legs;
/// - `cup-crossing`: a cup slides across an unrelated wire;
/// - `slide`: an operator slides through a cup onto the other leg as its
///   transpose;
/// - `trace-loop`: closing a wire pair of an operator into a loop equals
///   its partial trace;
/// - `conjugate-state`: contracting a cup with `⟨ψ|` leaves `conj(ψ)` on
///   the free leg.
pub fn identity_suite(
    dims: &[usize],
    samples: u32,
    seed: Seed,
    tol: Tol,
) -> Result<Vec<IdentityOutcome>, DiagramError> {
    assert!(
        !dims.is_empty() && !dims.contains(&0),
        "dimension list must be nonempty and positive"
    );
    let mut rng = seed.rng();
    let mut outcomes = Vec::new();

    struct Acc {
        cases: u32,
        max_abs_diff: f64,
        all_equivalent: bool,
    }
    impl Acc {
        fn new() -> Acc {
            Acc {
                cases: 0,
                max_abs_diff: 0.0,
                all_equivalent: true,
            }
        }
        fn run(&mut self, lhs: &str, rhs: &str, env: &Env, tol: Tol) -> Result<(), DiagramError> {
            let eq = equivalent(&parse(lhs)?, &parse(rhs)?, env, tol)?;
            self.cases += 1;
            self.max_abs_diff = self.max_abs_diff.max(eq.max_abs_diff);
            self.all_equivalent &= eq.equivalent;
            Ok(())
        }
        fn into_outcome(self, name: &'static str) -> IdentityOutcome {
            IdentityOutcome {
                name,
                cases: self.cases,
                max_abs_diff: self.max_abs_diff,
                all_equivalent: self.all_equivalent,
            }
        }
    }

    let empty = Env::new();

    let mut snake = Acc::new();
    for &d in dims {
        snake.run(
            &format!("(cup({d})*id({d}));(id({d})*cap({d}))"),
            &format!("id({d})"),
            &empty,
            tol,
        )?;
        snake.run(
            &format!("(id({d})*cup({d}));(cap({d})*id({d}))"),
            &format!("id({d})"),
            &empty,
            tol,
        )?;
    }
    outcomes.push(snake.into_outcome("snake"));

    let mut involution = Acc::new();
    for &p in dims {
        for &q in dims {
            involution.run(
                &format!("swap({p},{q});swap({q},{p})"),
                &format!("id({p})*id({q})"),
                &empty,
                tol,
            )?;
        }
    }
    outcomes.push(involution.into_outcome("swap-involution"));

    let mut symmetry = Acc::new();
    for &d in dims {
        symmetry.run(
            &format!("cup({d});swap({d},{d})"),
            &format!("cup({d})"),
            &empty,
            tol,
        )?;
    }
    outcomes.push(symmetry.into_outcome("cup-symmetry"));

    let mut crossing = Acc::new();
    for &d in dims {
        for &q in dims {
            crossing.run(
                &format!("(cup({d})*id({q}));(id({d})*swap({d},{q}))"),
                &format!("(id({q})*cup({d}));(swap({q},{d})*id({d}))"),
                &empty,
                tol,
            )?;
        }
    }
    outcomes.push(crossing.into_outcome("cup-crossing"));

    let mut slide = Acc::new();
    for &d in dims {
        for &e in dims {
            for _ in 0..samples {
                let f = sample::ginibre_from(&mut rng, e, d).expect("dims validated");
                let mut env = Env::new();
                env.bind("f", vec![d], vec![e], f.clone())?;
                env.bind("ft", vec![e], vec![d], f.transpose())?;
                slide.run(
                    &format!("cup({d});(id({d})*f)"),
                    &format!("cup({e});(ft*id({e}))"),
                    &env,
                    tol,
                )?;
            }
        }
    }
    outcomes.push(slide.into_outcome("slide"));

    let mut trace_loop = Acc::new();
    for &p in dims {
        for &q in dims {
            for &r in dims {
                for _ in 0..samples {
                    let f = sample::ginibre_from(&mut rng, p * r, p * q).expect("dims validated");
                    let looped = Mat::from_fn(r, q, |m, n| {
                        let mut acc = crate::numeric::C64::new(0.0, 0.0);
                        for i in 0..p {
                            acc += f.at(i * r + m, i * q + n);
                        }
                        acc
                    });
                    let mut env = Env::new();
                    env.bind("f", vec![p, q], vec![p, r], f)?;
                    env.bind("g", vec![q], vec![r], looped)?;
                    trace_loop.run(
                        &format!("(cup({p})*id({q}));(id({p})*f);(cap({p})*id({r}))"),
                        "g",
                        &env,
                        tol,
                    )?;
                }
            }
        }
    }
    outcomes.push(trace_loop.into_outcome("trace-loop"));

    let mut conjugate = Acc::new();
    for &d in dims {
        for _ in 0..samples {
            let psi = sample::pure_state_from(&mut rng, d).expect("dims validated");
            let mut env = Env::new();
            env.bind("psi_dag", vec![d], vec![], psi.dagger())?;
            env.bind("psi_conj", vec![], vec![d], psi.conj())?;
            conjugate.run(
                &format!("cup({d});(psi_dag*id({d}))"),
                "psi_conj",
                &env,
                tol,
            )?;
        }
    }
    outcomes.push(conjugate.into_outcome("conjugate-state"));

    Ok(outcomes)
}
