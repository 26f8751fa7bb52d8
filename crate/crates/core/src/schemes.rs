//! Ancilla-assisted decompositions of high-rank UCC factors.
//!
//! A rank-`n` factor with occupied `o₀…o_{n-1}` and virtual `v₀…v_{n-1}`
//! split as `n = p + q` becomes five steps:
//!
//! 1. `o₀…o_{p-1} → v₀…v_{p-2} η₁` at π/2
//! 2. `o_p…o_{n-1} → v_p…v_{n-2} η₂` at π/2
//! 3. controlled on the virtuals placed so far, `η₁η₂ → v_{p-1} v_{n-1}` at ±θ
//! 4. step 2 undone
//! 5. step 1 undone
//!
//! The η orbitals sit above every physical orbital and the control-copy
//! ancillas sit above the η orbitals.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::circuit::{count_gates, Circuit, GateCounts};
use crate::controlled::{lower_all, synth_controlled_ucc, ControlledFactorSpec};
use crate::error::{Error, Result};
use crate::fermion::{ExcitationOperator, JwConvention};
use crate::synth::synth_ucc_factor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Triple,
    Quadruple,
    Quintuple,
    Sextuple24,
    Sextuple33,
    /// Any `(p, q)` split through the same five-step template.
    Split(usize, usize),
    /// Two plain doubles in place of a quadruple. Not exact.
    NaiveTwoDoubles,
    /// The quadruple scheme with the controls dropped. Not exact.
    Uncontrolled,
}

impl Scheme {
    pub const TABULATED: [Scheme; 5] = [
        Scheme::Triple,
        Scheme::Quadruple,
        Scheme::Quintuple,
        Scheme::Sextuple24,
        Scheme::Sextuple33,
    ];

    pub fn split(&self) -> Option<(usize, usize)> {
        match *self {
            Scheme::Triple => Some((2, 1)),
            Scheme::Quadruple | Scheme::Uncontrolled => Some((2, 2)),
            Scheme::Quintuple => Some((2, 3)),
            Scheme::Sextuple24 => Some((2, 4)),
            Scheme::Sextuple33 => Some((3, 3)),
            Scheme::Split(p, q) => Some((p, q)),
            Scheme::NaiveTwoDoubles => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.split().map_or(4, |(p, q)| p + q)
    }

    /// Whether the scheme is expected to reproduce the target factor.
    pub fn is_exact(&self) -> bool {
        !matches!(self, Scheme::NaiveTwoDoubles | Scheme::Uncontrolled)
    }

    /// Number of controls on the middle step.
    pub fn control_count(&self) -> usize {
        match self {
            Scheme::NaiveTwoDoubles | Scheme::Uncontrolled => 0,
            _ => self.rank() - 2,
        }
    }

    /// Tabulated scheme for a rank, if there is one.
    pub fn for_rank(rank: usize) -> Option<Scheme> {
        match rank {
            3 => Some(Scheme::Triple),
            4 => Some(Scheme::Quadruple),
            5 => Some(Scheme::Quintuple),
            6 => Some(Scheme::Sextuple33),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Scheme::Triple => "triple".into(),
            Scheme::Quadruple => "quadruple".into(),
            Scheme::Quintuple => "quintuple".into(),
            Scheme::Sextuple24 => "sextuple-24".into(),
            Scheme::Sextuple33 => "sextuple-33".into(),
            Scheme::Split(p, q) => format!("split-{p}-{q}"),
            Scheme::NaiveTwoDoubles => "naive-quad".into(),
            Scheme::Uncontrolled => "uncontrolled-quad".into(),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "triple" => Scheme::Triple,
            "quad" | "quadruple" => Scheme::Quadruple,
            "quint" | "quintuple" => Scheme::Quintuple,
            "sext24" | "sextuple-24" => Scheme::Sextuple24,
            "sext33" | "sextuple-33" => Scheme::Sextuple33,
            "naive-quad" | "naive" => Scheme::NaiveTwoDoubles,
            "uncontrolled-quad" | "uncontrolled" => Scheme::Uncontrolled,
            _ => {
                let parts: Vec<&str> = s.split('-').collect();
                match parts.as_slice() {
                    ["split", p, q] => match (p.parse(), q.parse()) {
                        (Ok(p), Ok(q)) if p >= 1 && q >= 1 => Scheme::Split(p, q),
                        _ => return Err(Error::Parse(format!("bad split `{s}`"))),
                    },
                    _ => return Err(Error::Parse(format!("unknown scheme `{s}`"))),
                }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepAngle {
    HalfPi,
    Theta,
    MinusTheta,
}

impl StepAngle {
    pub fn value(&self, theta: f64) -> f64 {
        match self {
            StepAngle::HalfPi => std::f64::consts::FRAC_PI_2,
            StepAngle::Theta => theta,
            StepAngle::MinusTheta => -theta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    UccFactor,
    ControlledUccFactor,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub op: ExcitationOperator,
    pub angle: StepAngle,
    pub controls: Vec<usize>,
}

impl Step {
    pub fn kind(&self) -> StepKind {
        if self.controls.is_empty() {
            StepKind::UccFactor
        } else {
            StepKind::ControlledUccFactor
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionPlan {
    scheme: Scheme,
    target: ExcitationOperator,
    physical_orbitals: usize,
    eta: Vec<usize>,
    copies: Vec<usize>,
    steps: Vec<Step>,
}

impl DecompositionPlan {
    /// Plan for `target` on `physical_orbitals` orbitals with the η pair at
    /// `M, M+1` and copy ancillas from `M+2` up.
    pub fn new(scheme: Scheme, target: &ExcitationOperator, physical_orbitals: usize) -> Result<Self> {
        let eta = [physical_orbitals, physical_orbitals + 1];
        Self::with_ancillas(scheme, target.occupied(), target.virtual_orbitals(), eta)
    }

    /// Plan with explicit η orbitals, which must lie above every physical
    /// orbital. The physical register is everything below the lower η.
    pub fn with_ancillas(scheme: Scheme, occ: &[usize], virt: &[usize], eta: [usize; 2]) -> Result<Self> {
        let target = ExcitationOperator::new(occ.to_vec(), virt.to_vec())?;
        if target.rank() != scheme.rank() {
            return Err(Error::SchemeRankMismatch {
                scheme: scheme.name(),
                expected: scheme.rank(),
                got: target.rank(),
            });
        }
        if eta[0] == eta[1] {
            return Err(Error::IndexCollision(format!("η orbitals both {}", eta[0])));
        }
        let physical_orbitals = eta[0].min(eta[1]);
        if target.max_orbital() >= physical_orbitals {
            return Err(Error::IndexCollision(format!(
                "orbital {} is not below the η orbitals",
                target.max_orbital()
            )));
        }
        let Some((p, q)) = scheme.split() else {
            return Self::naive(&target, physical_orbitals);
        };
        if p == 0 || q == 0 {
            return Err(Error::Parse(format!("split ({p}, {q}) needs both parts")));
        }
        let n = p + q;
        let k = if scheme == Scheme::Uncontrolled { 0 } else { n - 2 };
        let top = eta[0].max(eta[1]) + 1;
        let copies: Vec<usize> = (top..top + k).collect();

        let with_eta = |v: &[usize], e: usize| v.iter().copied().chain([e]).collect::<Vec<_>>();
        let s1 = ExcitationOperator::new(occ[..p].to_vec(), with_eta(&virt[..p - 1], eta[0]))?;
        let s2 = ExcitationOperator::new(occ[p..].to_vec(), with_eta(&virt[p..n - 1], eta[1]))?;
        let s3 = ExcitationOperator::new(eta.to_vec(), vec![virt[p - 1], virt[n - 1]])?;
        let controls: Vec<usize> = if k == 0 {
            Vec::new()
        } else {
            virt[..p - 1].iter().chain(&virt[p..n - 1]).copied().collect()
        };
        let half = |op: ExcitationOperator| Step {
            op,
            angle: StepAngle::HalfPi,
            controls: Vec::new(),
        };
        let mut plan = DecompositionPlan {
            scheme,
            target,
            physical_orbitals,
            eta: eta.to_vec(),
            copies,
            steps: vec![
                half(s1.clone()),
                half(s2.clone()),
                Step {
                    op: s3,
                    angle: StepAngle::Theta,
                    controls,
                },
                half(s2.reversed()),
                half(s1.reversed()),
            ],
        };
        if plan.orientation()? < 0.0 {
            plan.steps[2].angle = StepAngle::MinusTheta;
        }
        Ok(plan)
    }

    fn naive(target: &ExcitationOperator, physical_orbitals: usize) -> Result<Self> {
        let (occ, virt) = (target.occupied(), target.virtual_orbitals());
        let step = |r: Range<usize>| {
            Ok(Step {
                op: ExcitationOperator::new(occ[r.clone()].to_vec(), virt[r].to_vec())?,
                angle: StepAngle::Theta,
                controls: Vec::new(),
            })
        };
        Ok(DecompositionPlan {
            scheme: Scheme::NaiveTwoDoubles,
            target: target.clone(),
            physical_orbitals,
            eta: Vec::new(),
            copies: Vec::new(),
            steps: vec![step(0..2)?, step(2..4)?],
        })
    }

    /// Sign `ε` for the middle step such that the plan maps the reference
    /// determinant to `cos θ|occ⟩ + σ sin θ|virt⟩` with the target's own
    /// sign `σ`. Follows the determinant through every step.
    ///
    /// Only the relative order of the target and η orbitals matters, so the
    /// path is followed on those orbitals relabelled `0..2n+2`.
    fn orientation(&self) -> Result<f64> {
        let mut used: Vec<usize> = self.target.orbitals().chain(self.eta.iter().copied()).collect();
        used.sort_unstable();
        let relabel = |op: &ExcitationOperator| {
            let pos = |v: &[usize]| -> Vec<usize> {
                v.iter().map(|p| used.binary_search(p).expect("orbital in plan")).collect()
            };
            ExcitationOperator::new(pos(op.occupied()), pos(op.virtual_orbitals()))
        };
        let target = relabel(&self.target)?;
        let ops: Vec<ExcitationOperator> = self.steps.iter().map(|s| relabel(&s.op)).collect::<Result<_>>()?;
        let conv = JwConvention::identity(used.len());
        let occ = conv.determinant(target.occupied())?;
        let virt = conv.determinant(target.virtual_orbitals())?;
        let (sigma_t, _) = target.apply_to_determinant(occ, &conv).expect("reference is excitable");
        let (s1, d1) = quarter_turn(&ops[0], occ, &conv);
        let (s2, d2) = quarter_turn(&ops[1], d1, &conv);
        let (s3, d3) = ops[2]
            .apply_to_determinant(d2, &conv)
            .ok_or_else(|| Error::IndexCollision("middle step cannot fire on the reference".into()))?;
        let (s4, d4) = quarter_turn(&ops[3], d3, &conv);
        let (s5, d5) = quarter_turn(&ops[4], d4, &conv);
        if d5 != virt {
            return Err(Error::IndexCollision("steps do not reach the target determinant".into()));
        }
        Ok(sigma_t * s1 * s2 * s3 * s4 * s5)
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn target(&self) -> &ExcitationOperator {
        &self.target
    }

    pub fn rank(&self) -> usize {
        self.target.rank()
    }

    pub fn physical_orbitals(&self) -> usize {
        self.physical_orbitals
    }

    pub fn eta(&self) -> &[usize] {
        &self.eta
    }

    pub fn copy_ancillas(&self) -> &[usize] {
        &self.copies
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Physical orbitals plus η orbitals.
    pub fn fermionic_width(&self) -> usize {
        self.eta
            .iter()
            .map(|e| e + 1)
            .max()
            .unwrap_or(self.physical_orbitals)
    }

    pub fn total_qubits(&self) -> usize {
        self.fermionic_width() + self.copies.len()
    }

    /// η orbitals and copy ancillas.
    pub fn ancillas(&self) -> Vec<usize> {
        self.eta.iter().chain(&self.copies).copied().collect()
    }

    /// Human-readable listing, one step per line, η written `h1`, `h2`.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# plan {} rank={} orbitals={} target={}",
            self.scheme,
            self.rank(),
            self.physical_orbitals,
            self.target
        );
        if !self.eta.is_empty() {
            out.push_str(&format!(" eta={}", join(&self.eta)));
        }
        if !self.copies.is_empty() {
            out.push_str(&format!(" copies={}", join(&self.copies)));
        }
        out.push('\n');
        let name = |p: &usize| match self.eta.iter().position(|e| e == p) {
            Some(i) => format!("h{}", i + 1),
            None => p.to_string(),
        };
        for s in &self.steps {
            if !s.controls.is_empty() {
                out.push_str(&format!("C{{{}}} ", join(&s.controls)));
            }
            let occ: Vec<String> = s.op.occupied().iter().map(name).collect();
            let virt: Vec<String> = s.op.virtual_orbitals().iter().map(name).collect();
            let angle = match s.angle {
                StepAngle::HalfPi => "pi/2",
                StepAngle::Theta => "theta",
                StepAngle::MinusTheta => "-theta",
            };
            out.push_str(&format!("{}->{} @ {angle}\n", occ.join(","), virt.join(",")));
        }
        out
    }

    /// Parses [`to_text`](Self::to_text) output. The plan is rebuilt from the
    /// header and must agree with the listed steps.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .and_then(|h| h.strip_prefix("# plan "))
            .ok_or_else(|| Error::Parse("missing `# plan` header".into()))?;
        let mut tokens = header.split_whitespace();
        let scheme: Scheme = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing scheme".into()))?
            .parse()?;
        let (mut orbitals, mut target, mut eta) = (None, None, None);
        for tok in tokens {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header token `{tok}`")))?;
            match key {
                "orbitals" => orbitals = Some(parse_usize(value)?),
                "target" => target = Some(value.parse::<ExcitationOperator>()?),
                "eta" => eta = Some(parse_list(value)?),
                "rank" | "copies" => {}
                _ => return Err(Error::Parse(format!("unknown header key `{key}`"))),
            }
        }
        let target = target.ok_or_else(|| Error::Parse("header lacks target".into()))?;
        let orbitals = orbitals.ok_or_else(|| Error::Parse("header lacks orbitals".into()))?;
        let plan = match (scheme, eta) {
            (Scheme::NaiveTwoDoubles, _) => Self::naive(&target, orbitals)?,
            (_, Some(e)) if e.len() == 2 => {
                Self::with_ancillas(scheme, target.occupied(), target.virtual_orbitals(), [e[0], e[1]])?
            }
            _ => Self::new(scheme, &target, orbitals)?,
        };
        let listed: Vec<&str> = lines.collect();
        let expected = plan.to_text();
        let expected_steps: Vec<&str> = expected.lines().skip(1).collect();
        if listed != expected_steps {
            return Err(Error::Parse("step listing does not match the scheme".into()));
        }
        Ok(plan)
    }
}

/// `exp(π/2 (A − A†))|det⟩`, which is a signed determinant.
fn quarter_turn(op: &ExcitationOperator, det: u64, conv: &JwConvention) -> (f64, u64) {
    if let Some(r) = op.apply_to_determinant(det, conv) {
        return r;
    }
    if let Some((s, t)) = op.apply_adjoint_to_determinant(det, conv) {
        return (-s, t);
    }
    (1.0, det)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(parse_usize).collect()
}

/// Compiled circuit with the gate range of each step.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledPlan {
    pub circuit: Circuit,
    pub blocks: Vec<Range<usize>>,
}

impl CompiledPlan {
    pub fn counts(&self) -> GateCounts {
        count_gates(&self.circuit)
    }

    /// One past the highest qubit touched by each block.
    pub fn block_widths(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .map(|r| {
                self.circuit.gates()[r.clone()]
                    .iter()
                    .flat_map(|g| g.qubits())
                    .max()
                    .map_or(0, |q| q + 1)
            })
            .collect()
    }
}

/// Lowers every step to gates, MCRZ included.
pub fn compile(plan: &DecompositionPlan, theta: f64, conv: &JwConvention) -> Result<CompiledPlan> {
    if conv.total_qubits() < plan.total_qubits() {
        return Err(Error::ConventionTooSmall {
            have: conv.total_qubits(),
            need: plan.total_qubits(),
        });
    }
    let mut circuit = Circuit::new(conv.total_qubits());
    let mut blocks = Vec::with_capacity(plan.steps.len());
    for s in &plan.steps {
        let angle = s.angle.value(theta);
        let block = if s.controls.is_empty() {
            synth_ucc_factor(&s.op, angle, conv)?
        } else {
            let spec = ControlledFactorSpec {
                controls: s.controls.clone(),
                op: s.op.clone(),
                theta: angle,
                copy_ancillas: plan.copies[..s.controls.len()].to_vec(),
            };
            lower_all(&synth_controlled_ucc(&spec, conv)?)?
        };
        let start = circuit.len();
        circuit.append(&block)?;
        blocks.push(start..circuit.len());
    }
    Ok(CompiledPlan { circuit, blocks })
}

/// Quadruple plan with explicit η orbitals.
pub fn plan_quadruple(occ: &[usize], virt: &[usize], anc: [usize; 2]) -> Result<DecompositionPlan> {
    DecompositionPlan::with_ancillas(Scheme::Quadruple, occ, virt, anc)
}

pub fn plan_triple(occ: &[usize], virt: &[usize], anc: [usize; 2]) -> Result<DecompositionPlan> {
    DecompositionPlan::with_ancillas(Scheme::Triple, occ, virt, anc)
}

pub fn plan_quintuple(occ: &[usize], virt: &[usize], anc: [usize; 2]) -> Result<DecompositionPlan> {
    DecompositionPlan::with_ancillas(Scheme::Quintuple, occ, virt, anc)
}

pub fn plan_sextuple_24(occ: &[usize], virt: &[usize], anc: [usize; 2]) -> Result<DecompositionPlan> {
    DecompositionPlan::with_ancillas(Scheme::Sextuple24, occ, virt, anc)
}

pub fn plan_sextuple_33(occ: &[usize], virt: &[usize], anc: [usize; 2]) -> Result<DecompositionPlan> {
    DecompositionPlan::with_ancillas(Scheme::Sextuple33, occ, virt, anc)
}

pub fn plan_uncontrolled(occ: &[usize], virt: &[usize], anc: [usize; 2]) -> Result<DecompositionPlan> {
    DecompositionPlan::with_ancillas(Scheme::Uncontrolled, occ, virt, anc)
}

/// Two doubles `o₀o₁ → v₀v₁` and `o₂o₃ → v₂v₃`, each at θ.
pub fn plan_naive_two_doubles(occ: &[usize], virt: &[usize]) -> Result<DecompositionPlan> {
    let target = ExcitationOperator::new(occ.to_vec(), virt.to_vec())?;
    if target.rank() != 4 {
        return Err(Error::SchemeRankMismatch {
            scheme: Scheme::NaiveTwoDoubles.name(),
            expected: 4,
            got: target.rank(),
        });
    }
    DecompositionPlan::naive(&target, target.max_orbital() + 1)
}
