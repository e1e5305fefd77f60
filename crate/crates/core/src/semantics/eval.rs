use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::formula::{atoms_of, Formula};
use crate::matrix::{is_identifier, Matrix, Value};

pub const DEFAULT_ATOM_CAP: usize = 8;
/// 9^8: NC with eight atoms is accepted, FC with eight is not.
pub const DEFAULT_VALUATION_CAP: u128 = 43_046_721;

/// An assignment of values to a sorted list of atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Valuation {
    atoms: Vec<String>,
    values: Vec<Value>,
}

impl Valuation {
    /// Pairs must name distinct atoms; they are stored sorted.
    pub fn new(mut pairs: Vec<(String, Value)>) -> Result<Self> {
        pairs.sort();
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::domain(format!("atom {} assigned twice", w[0].0)));
        }
        let (atoms, values) = pairs.into_iter().unzip();
        Ok(Valuation { atoms, values })
    }

    /// Parses `A=tf, B=ff` against the value names of `m`.
    pub fn parse(m: &Matrix, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (atom, value) = part
                .split_once('=')
                .ok_or_else(|| Error::domain(format!("expected atom=value, got {part:?}")))?;
            let atom = atom.trim();
            if !is_identifier(atom) {
                return Err(Error::domain(format!("invalid atom name {atom:?}")));
            }
            pairs.push((atom.to_string(), m.lookup(value.trim())?));
        }
        Self::new(pairs)
    }

    pub fn get(&self, atom: &str) -> Option<Value> {
        self.atoms
            .binary_search_by(|a| a.as_str().cmp(atom))
            .ok()
            .map(|i| self.values[i])
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Value)> {
        self.atoms.iter().map(String::as_str).zip(self.values.iter().copied())
    }

    pub fn map_values(&self, f: impl Fn(Value) -> Value) -> Valuation {
        Valuation {
            atoms: self.atoms.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn display<'a>(&'a self, m: &'a Matrix) -> impl fmt::Display + 'a {
        DisplayValuation { v: self, m }
    }
}

struct DisplayValuation<'a> {
    v: &'a Valuation,
    m: &'a Matrix,
}

impl fmt::Display for DisplayValuation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, v)) in self.v.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}={}", self.m.value_name(v))?;
        }
        Ok(())
    }
}

pub fn evaluate(m: &Matrix, formula: &Formula, val: &Valuation) -> Result<Value> {
    match formula {
        Formula::Atom(a) => {
            let v = val.get(a).ok_or_else(|| Error::MissingAtom(a.clone()))?;
            if !m.contains(v) {
                return Err(Error::ForeignValue {
                    index: v.index(),
                    matrix: m.name().to_string(),
                });
            }
            Ok(v)
        }
        Formula::Compound { op, args } => {
            let i = m.resolve_op(op, args.len())?;
            let vals = args.iter().map(|a| evaluate(m, a, val)).collect::<Result<Vec<_>>>()?;
            Ok(m.op(i).eval(&vals))
        }
    }
}

/// A formula flattened into a node list whose children precede their
/// parents, over atom slots.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Node {
    Atom(usize),
    Op { op: usize, args: Vec<usize> },
}

impl Compiled {
    pub(crate) fn new(m: &Matrix, formulas: &[&Formula], atoms: &[String]) -> Result<Self> {
        let mut c = Compiled {
            nodes: Vec::new(),
            roots: Vec::new(),
        };
        for f in formulas {
            let root = c.add(m, f, atoms)?;
            c.roots.push(root);
        }
        Ok(c)
    }

    fn add(&mut self, m: &Matrix, f: &Formula, atoms: &[String]) -> Result<usize> {
        let node = match f {
            Formula::Atom(a) => Node::Atom(atoms.binary_search(a).map_err(|_| Error::MissingAtom(a.clone()))?),
            Formula::Compound { op, args } => {
                let op = m.resolve_op(op, args.len())?;
                let args = args.iter().map(|a| self.add(m, a, atoms)).collect::<Result<Vec<_>>>()?;
                Node::Op { op, args }
            }
        };
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }

    /// Values of the roots under the assignment `slots`.
    pub(crate) fn run(&self, m: &Matrix, slots: &[Value], scratch: &mut Vec<Value>, out: &mut Vec<Value>) {
        scratch.clear();
        let mut args = Vec::new();
        for node in &self.nodes {
            let v = match node {
                Node::Atom(i) => slots[*i],
                Node::Op { op, args: children } => {
                    args.clear();
                    args.extend(children.iter().map(|&c| scratch[c]));
                    m.op(*op).eval(&args)
                }
            };
            scratch.push(v);
        }
        out.clear();
        out.extend(self.roots.iter().map(|&r| scratch[r]));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntailmentVerdict {
    pub holds: bool,
    pub countervaluation: Option<Valuation>,
    /// Valuations inspected by a sequential scan up to the verdict: the
    /// position of the countervaluation, or all of them.
    pub valuations_checked: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct EntailOptions {
    pub atom_cap: usize,
    pub valuation_cap: u128,
    pub jobs: usize,
}

impl Default for EntailOptions {
    fn default() -> Self {
        EntailOptions {
            atom_cap: DEFAULT_ATOM_CAP,
            valuation_cap: DEFAULT_VALUATION_CAP,
            jobs: 1,
        }
    }
}

/// Decodes valuation number `index` into `slots`, first atom most significant.
fn decode(mut index: u64, n: u64, slots: &mut [Value]) {
    for s in slots.iter_mut().rev() {
        *s = Value::new((index % n) as usize);
        index /= n;
    }
}

fn advance(slots: &mut [Value], n: usize) {
    for s in slots.iter_mut().rev() {
        if s.index() + 1 < n {
            *s = Value::new(s.index() + 1);
            return;
        }
        *s = Value::new(0);
    }
}

/// First countervaluation index in `[start, end)`, giving up once `best`
/// drops below the current position.
fn scan(m: &Matrix, prog: &Compiled, atoms: usize, start: u64, end: u64, best: &AtomicU64) -> Option<u64> {
    let n = m.len();
    let mut slots = vec![Value::new(0); atoms];
    decode(start, n as u64, &mut slots);
    let (mut scratch, mut out) = (Vec::new(), Vec::new());
    let designated = m.designated_mask();
    for i in start..end {
        if i & 0xfff == 0 && best.load(Ordering::Relaxed) < i {
            return None;
        }
        prog.run(m, &slots, &mut scratch, &mut out);
        let (conclusion, premises) = out.split_last().unwrap();
        if premises.iter().all(|v| designated & v.bit() != 0) && designated & conclusion.bit() == 0 {
            best.fetch_min(i, Ordering::Relaxed);
            return Some(i);
        }
        advance(&mut slots, n);
    }
    None
}

pub fn entails_with(
    m: &Matrix,
    premises: &[Formula],
    conclusion: &Formula,
    options: &EntailOptions,
) -> Result<EntailmentVerdict> {
    let atoms = atoms_of(premises.iter().chain([conclusion]));
    if atoms.len() > options.atom_cap {
        return Err(Error::AtomCapExceeded {
            atoms: atoms.len(),
            cap: options.atom_cap,
        });
    }
    let total = (m.len() as u128).pow(atoms.len() as u32);
    if total > options.valuation_cap {
        return Err(Error::ValuationCapExceeded {
            valuations: total,
            cap: options.valuation_cap,
        });
    }
    let total = total as u64;
    let formulas: Vec<&Formula> = premises.iter().chain([conclusion]).collect();
    let prog = Compiled::new(m, &formulas, &atoms)?;
    let best = AtomicU64::new(u64::MAX);
    let jobs = options.jobs.max(1).min(total.max(1) as usize);
    let found = if jobs == 1 || total < 4096 {
        scan(m, &prog, atoms.len(), 0, total, &best)
    } else {
        let chunk = total.div_ceil(jobs as u64);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs as u64)
                .map(|j| {
                    let (prog, best, k) = (&prog, &best, atoms.len());
                    let (start, end) = (j * chunk, ((j + 1) * chunk).min(total));
                    s.spawn(move || scan(m, prog, k, start, end, best))
                })
                .collect();
            handles.into_iter().filter_map(|h| h.join().unwrap()).min()
        })
    };
    Ok(match found {
        None => EntailmentVerdict {
            holds: true,
            countervaluation: None,
            valuations_checked: total,
        },
        Some(i) => {
            let mut slots = vec![Value::new(0); atoms.len()];
            decode(i, m.len() as u64, &mut slots);
            EntailmentVerdict {
                holds: false,
                countervaluation: Some(Valuation { atoms, values: slots }),
                valuations_checked: i + 1,
            }
        }
    })
}

pub fn entails(m: &Matrix, premises: &[Formula], conclusion: &Formula) -> Result<EntailmentVerdict> {
    entails_with(m, premises, conclusion, &EntailOptions::default())
}

pub fn is_tautology(m: &Matrix, formula: &Formula) -> Result<EntailmentVerdict> {
    entails(m, &[], formula)
}

/// Re-evaluates a countervaluation from scratch.
pub fn is_countervaluation(m: &Matrix, premises: &[Formula], conclusion: &Formula, val: &Valuation) -> Result<bool> {
    for p in premises {
        if !m.designates(evaluate(m, p, val)?) {
            return Ok(false);
        }
    }
    Ok(!m.designates(evaluate(m, conclusion, val)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{bool2, build_seven_valued, fc, nc, SevenValuedSpec};
    use crate::formula::parse_formula;
    use proptest::prelude::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn check(m: &Matrix, premises: &[&str], conclusion: &str) -> EntailmentVerdict {
        let ps: Vec<Formula> = premises.iter().map(|p| f(p)).collect();
        let c = f(conclusion);
        let v = entails(m, &ps, &c).unwrap();
        assert_eq!(v.holds, v.countervaluation.is_none());
        if let Some(cv) = &v.countervaluation {
            assert!(is_countervaluation(m, &ps, &c, cv).unwrap());
        }
        for jobs in [2, 5] {
            let options = EntailOptions {
                jobs,
                ..Default::default()
            };
            assert_eq!(entails_with(m, &ps, &c, &options).unwrap(), v);
        }
        v
    }

    fn seven(s: &str) -> Matrix {
        build_seven_valued(s.parse::<SevenValuedSpec>().unwrap())
    }

    #[test]
    fn evaluation() {
        let m = nc();
        let val = Valuation::parse(&m, "A=tf, B=ff").unwrap();
        assert_eq!(m.value_name(evaluate(&m, &f("A | B"), &val).unwrap()), "tf");
        let val = Valuation::parse(&m, "A=tt,B=ff").unwrap();
        assert_eq!(m.value_name(evaluate(&m, &f("A & (B | ~A)"), &val).unwrap()), "tt");
        assert!(matches!(evaluate(&m, &f("C"), &val), Err(Error::MissingAtom(a)) if a == "C"));
        assert!(matches!(
            evaluate(&m, &f("imp(A, B)"), &val),
            Err(Error::UnknownOperation(_))
        ));
        assert!(Valuation::parse(&m, "A=xx").is_err());
        assert!(Valuation::parse(&m, "A=ff, A=tt").is_err());
    }

    #[test]
    fn known_entailments_and_countervaluations() {
        let v = check(&nc(), &["A | B"], "B");
        assert_eq!(v.countervaluation.unwrap().display(&nc()).to_string(), "A=tf, B=ff");
        assert!(check(&seven("Bt"), &["A | B"], "B").holds);
        assert!(check(&seven("Bb*"), &["A & (B | ~A)"], "B").holds);
        let m = seven("Tf*");
        let v = check(&m, &["A"], "~~A");
        assert_eq!(v.countervaluation.unwrap().display(&m).to_string(), "A=Tf");
        assert!(check(&fc(), &["A"], "A").holds);
    }

    #[test]
    fn tautologies() {
        assert!(is_tautology(&bool2(), &f("A | ~A")).unwrap().holds);
        let v = is_tautology(&nc(), &f("A | ~A")).unwrap();
        assert_eq!(v.countervaluation.unwrap().display(&nc()).to_string(), "A=ff");
        assert_eq!(v.valuations_checked, 1);
        for m in [nc(), fc(), bool2()] {
            assert!(!is_tautology(&m, &f("A")).unwrap().holds);
        }
    }

    #[test]
    fn caps() {
        let nine = f("A1 & A2 & A3 & A4 & A5 & A6 & A7 & A8 & A9");
        assert!(matches!(
            entails(&bool2(), &[], &nine),
            Err(Error::AtomCapExceeded { atoms: 9, cap: 8 })
        ));
        let eight = f("A1 & A2 & A3 & A4 & A5 & A6 & A7 & A8");
        assert!(matches!(
            entails(&fc(), &[], &eight),
            Err(Error::ValuationCapExceeded { .. })
        ));
        let options = EntailOptions {
            atom_cap: 9,
            ..Default::default()
        };
        assert!(!entails_with(&bool2(), &[], &nine, &options).unwrap().holds);
    }

    fn formulas(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
        let leaf = prop::sample::select(atoms.to_vec()).prop_map(Formula::atom);
        leaf.prop_recursive(depth, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::neg),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::and(x, y)),
                (inner.clone(), inner).prop_map(|(x, y)| Formula::or(x, y)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn compositional(g in formulas(&["A", "B", "C"], 4), vs in prop::collection::vec(0usize..9, 3)) {
            let m = nc();
            let val = Valuation::new(["A", "B", "C"].iter().zip(&vs).map(|(a, &v)| (a.to_string(), Value::new(v))).collect()).unwrap();
            if let Formula::Compound { op, args } = &g {
                let inner: Vec<Value> = args.iter().map(|a| evaluate(&m, a, &val).unwrap()).collect();
                prop_assert_eq!(evaluate(&m, &g, &val).unwrap(), m.apply_op(op, &inner).unwrap());
            }
        }

        #[test]
        fn premise_strengthening(p in formulas(&["A", "B"], 2), q in formulas(&["A", "B"], 2), c in formulas(&["A", "B"], 2)) {
            let m = nc();
            let weak = entails(&m, std::slice::from_ref(&p), &c).unwrap();
            let strong = entails(&m, &[p, q], &c).unwrap();
            prop_assert!(!weak.holds || strong.holds);
        }
    }
}
