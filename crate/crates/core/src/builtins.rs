//! Programmatic constructions of the standard matrices: weak Kleene `K_w`,
//! `NC`, `FDE`, `AC2`, `FC = FDE × AC2`, the two-valued
//! Boolean matrix and the sixteen seven-valued reductions of `FC`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::direct_product;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Operation, Value};

/// Names accepted by [`build_builtin`].
pub const BUILTIN_NAMES: [&str; 6] = ["kw3", "nc", "fde", "ac2", "fc", "bool2"];

const KW_VALUES: [&str; 3] = ["f", "u", "t"];
const FDE_VALUES: [&str; 4] = ["B", "T", "F", "N"];
const AC2_VALUES: [&str; 4] = ["b", "t", "f", "n"];

// weak Kleene over f=0, u=1, t=2
const KW_AND: [[usize; 3]; 3] = [[0, 1, 0], [1, 1, 1], [0, 1, 2]];
const KW_OR: [[usize; 3]; 3] = [[0, 1, 2], [1, 1, 1], [2, 1, 2]];

// FDE over B=0, T=1, F=2, N=3
const FDE_NEG: [usize; 4] = [0, 2, 1, 3];
const FDE_AND: [[usize; 4]; 4] = [[0, 0, 2, 2], [0, 1, 2, 3], [2, 2, 2, 2], [2, 3, 2, 3]];
const FDE_OR: [[usize; 4]; 4] = [[0, 1, 0, 1], [1, 1, 1, 1], [0, 1, 2, 3], [1, 1, 3, 3]];

// AC2 over b=0, t=1, f=2, n=3; conjunction and disjunction coincide
const AC2_NEG: [usize; 4] = [0, 2, 1, 3];
const AC2_AND: [[usize; 4]; 4] = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]];

fn names(vs: &[&str]) -> Vec<String> {
    vs.iter().map(|s| s.to_string()).collect()
}

fn unary(name: &str, n: usize, table: &[usize]) -> Operation {
    Operation::from_fn(name, 1, n, |a| Value::new(table[a[0].index()]))
}

fn binary<const N: usize>(name: &str, table: &[[usize; N]; N]) -> Operation {
    Operation::from_fn(name, 2, N, |a| Value::new(table[a[0].index()][a[1].index()]))
}

fn values(idx: &[usize]) -> Vec<Value> {
    idx.iter().map(|&i| Value::new(i)).collect()
}

/// Weak Kleene logic with conjunction and disjunction; `t` designated.
pub fn kw3() -> Matrix {
    Matrix::from_parts(
        "Kw",
        names(&KW_VALUES),
        &values(&[2]),
        vec![binary("and", &KW_AND), binary("or", &KW_OR)],
    )
    .expect("Kw is well-formed")
}

/// The nine-valued matrix: pairs over `K`, negation swaps the pair,
/// conjunction and disjunction act componentwise; `{t} × K` designated.
pub fn nc() -> Matrix {
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
    let value_names = pairs
        .iter()
        .map(|&(a, b)| format!("{}{}", KW_VALUES[a], KW_VALUES[b]))
        .collect();
    let index = |(a, b): (usize, usize)| Value::new(a * 3 + b);
    let neg = Operation::from_fn("neg", 1, 9, |x| {
        let (a, b) = pairs[x[0].index()];
        index((b, a))
    });
    // The second component tracks falsity, so it combines dually.
    let lift = |name: &str, first: &[[usize; 3]; 3], second: &[[usize; 3]; 3]| {
        Operation::from_fn(name, 2, 9, |x| {
            let (a0, a1) = pairs[x[0].index()];
            let (b0, b1) = pairs[x[1].index()];
            index((first[a0][b0], second[a1][b1]))
        })
    };
    let ops = vec![neg, lift("and", &KW_AND, &KW_OR), lift("or", &KW_OR, &KW_AND)];
    Matrix::from_parts("NC", value_names, &values(&[6, 7, 8]), ops).expect("NC is well-formed")
}

pub fn fde() -> Matrix {
    Matrix::from_parts(
        "FDE",
        names(&FDE_VALUES),
        &values(&[0, 1]),
        vec![
            unary("neg", 4, &FDE_NEG),
            binary("and", &FDE_AND),
            binary("or", &FDE_OR),
        ],
    )
    .expect("FDE is well-formed")
}

pub fn ac2() -> Matrix {
    Matrix::from_parts(
        "AC2",
        names(&AC2_VALUES),
        &values(&[2, 3]),
        vec![
            unary("neg", 4, &AC2_NEG),
            binary("and", &AC2_AND),
            binary("or", &AC2_AND),
        ],
    )
    .expect("AC2 is well-formed")
}

/// The sixteen-valued matrix `FDE × AC2`.
pub fn fc() -> Matrix {
    direct_product(&fde(), &ac2())
        .expect("FDE and AC2 share a signature")
        .renamed("FC")
}

/// Classical two-valued logic with `f`, `t`; `t` designated.
pub fn bool2() -> Matrix {
    Matrix::from_parts(
        "Bool",
        names(&["f", "t"]),
        &values(&[1]),
        vec![
            unary("neg", 2, &[1, 0]),
            binary("and", &[[0, 0], [0, 1]]),
            binary("or", &[[0, 1], [1, 1]]),
        ],
    )
    .expect("Bool is well-formed")
}

/// Builds a matrix by builtin name (see [`BUILTIN_NAMES`]); also accepts
/// `fc7:<V><v>[*]` for the seven-valued matrices.
pub fn build_builtin(name: &str) -> Result<Matrix> {
    match name {
        "kw3" => Ok(kw3()),
        "nc" => Ok(nc()),
        "fde" => Ok(fde()),
        "ac2" => Ok(ac2()),
        "fc" => Ok(fc()),
        "bool2" => Ok(bool2()),
        other => match other.strip_prefix("fc7:") {
            Some(spec) => Ok(build_seven_valued(spec.parse()?)),
            None => Err(Error::UnknownBuiltin(name.to_string())),
        },
    }
}

/// Parameters of a seven-valued reduction of `FC`: the designated FDE value
/// that keeps all four AC2 partners, the AC2 value every other FDE value is
/// paired with, and whether the alternative designation is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SevenValuedSpec {
    split: usize,
    dominant: usize,
    pub starred: bool,
}

impl SevenValuedSpec {
    /// `split` is `'B'` or `'T'`; `dominant` one of `'b'`, `'t'`, `'f'`, `'n'`.
    pub fn new(split: char, dominant: char, starred: bool) -> Result<Self> {
        let split = match split {
            'B' => 0,
            'T' => 1,
            c => return Err(Error::domain(format!("differentiated value must be B or T, not {c}"))),
        };
        let dominant = AC2_VALUES
            .iter()
            .position(|v| v.starts_with(dominant))
            .ok_or_else(|| Error::domain(format!("dominant value must be one of b, t, f, n, not {dominant}")))?;
        Ok(SevenValuedSpec {
            split,
            dominant,
            starred,
        })
    }

    /// All sixteen combinations, unstarred before starred, `B` before `T`,
    /// dominant values in AC2 order.
    pub fn all() -> Vec<SevenValuedSpec> {
        let mut out = Vec::with_capacity(16);
        for starred in [false, true] {
            for split in 0..2 {
                for dominant in 0..4 {
                    out.push(SevenValuedSpec {
                        split,
                        dominant,
                        starred,
                    });
                }
            }
        }
        out
    }

    pub fn split(&self) -> char {
        FDE_VALUES[self.split].chars().next().unwrap()
    }

    pub fn dominant(&self) -> char {
        AC2_VALUES[self.dominant].chars().next().unwrap()
    }

    /// Index of a value of `FC` after projecting it into the seven-value set.
    fn project(&self, fc_index: usize) -> usize {
        let (fde, _) = (fc_index / 4, fc_index % 4);
        if fde == self.split {
            fc_index
        } else {
            fde * 4 + self.dominant
        }
    }

    fn keeps(&self, fc_index: usize) -> bool {
        self.project(fc_index) == fc_index
    }

    pub fn matrix_name(&self) -> String {
        format!(
            "FC{}_{}{}",
            if self.starred { "*" } else { "" },
            self.split(),
            self.dominant()
        )
    }
}

impl fmt::Display for SevenValuedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.split(),
            self.dominant(),
            if self.starred { "*" } else { "" }
        )
    }
}

impl FromStr for SevenValuedSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, starred) = match s.strip_suffix('*') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let mut chars = body.chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(split), Some(dominant), None) => SevenValuedSpec::new(split, dominant, starred),
            _ => Err(Error::domain(format!(
                "seven-valued spec must look like Bt or Bt*, not {s}"
            ))),
        }
    }
}

/// The projection of `FC`'s values into the seven-value set of `spec`,
/// as indices into `FC`.
pub fn seven_valued_projection(spec: SevenValuedSpec, fc_index: usize) -> usize {
    spec.project(fc_index)
}

/// Builds `FC_{Vv}` (or its starred variant): the values of `FC` whose FDE
/// part is `V` or whose AC2 part is `v`, with every operation computed in
/// `FC` and the result pushed onto the dominant value when its FDE part is
/// not `V`.
pub fn build_seven_valued(spec: SevenValuedSpec) -> Matrix {
    let full = fc();
    let kept: Vec<usize> = (0..full.len()).filter(|&i| spec.keeps(i)).collect();
    debug_assert_eq!(kept.len(), 7);
    let local = |fc_index: usize| Value::new(kept.iter().position(|&k| k == fc_index).unwrap());
    let value_names: Vec<String> = kept.iter().map(|&i| full.value_names()[i].clone()).collect();
    let ops = full
        .ops()
        .iter()
        .map(|op| {
            Operation::from_fn(op.name(), op.arity(), kept.len(), |args| {
                let lifted: Vec<Value> = args.iter().map(|a| Value::new(kept[a.index()])).collect();
                local(spec.project(op.eval(&lifted).index()))
            })
        })
        .collect();
    let other = 1 - spec.split;
    let flipped = other * 4 + spec.dominant;
    let designated: Vec<Value> = kept
        .iter()
        .enumerate()
        .filter(|&(_, &i)| {
            let base = full.designates(Value::new(i));
            if spec.starred && i == flipped {
                // starred: V'v is designated exactly when v is t or b
                matches!(AC2_VALUES[spec.dominant], "t" | "b")
            } else {
                base
            }
        })
        .map(|(j, _)| Value::new(j))
        .collect();
    Matrix::from_parts(spec.matrix_name(), value_names, &designated, ops).expect("seven-valued matrix is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::validate_matrix;

    fn designated_names(m: &Matrix) -> Vec<&str> {
        m.designated().map(|v| m.value_name(v)).collect()
    }

    #[test]
    fn nc_negation_swaps() {
        let nc = nc();
        assert_eq!(nc.apply_named("neg", &["fu"]).unwrap(), "uf");
        assert_eq!(nc.apply_named("neg", &["ft"]).unwrap(), "tf");
        assert!(nc.is_designated(nc.lookup("tf").unwrap()).unwrap());
        assert!(!nc.is_designated(nc.lookup("ff").unwrap()).unwrap());
        assert_eq!(designated_names(&nc), ["tf", "tu", "tt"]);
        // first row of the printed tables
        assert_eq!(nc.apply_named("and", &["ff", "ft"]).unwrap(), "ft");
        assert_eq!(nc.apply_named("and", &["ff", "ut"]).unwrap(), "ut");
        assert_eq!(nc.apply_named("or", &["ff", "ft"]).unwrap(), "ff");
        assert_eq!(nc.apply_named("or", &["ff", "tu"]).unwrap(), "tu");
    }

    #[test]
    fn table_spot_checks() {
        assert_eq!(fde().apply_named("and", &["B", "N"]).unwrap(), "F");
        assert_eq!(kw3().apply_named("or", &["u", "t"]).unwrap(), "u");
        let ac2 = ac2();
        assert_eq!(ac2.apply_named("and", &["t", "f"]).unwrap(), "b");
        assert_eq!(ac2.apply_named("or", &["t", "f"]).unwrap(), "b");
    }

    #[test]
    fn fc_shape() {
        let fc = fc();
        assert_eq!(fc.len(), 16);
        let mut d = designated_names(&fc);
        d.sort();
        assert_eq!(d, ["Bf", "Bn", "Tf", "Tn"]);
        assert!(fc.is_designated(fc.lookup("Bf").unwrap()).unwrap());
        assert_eq!(fc, direct_product(&fde(), &ac2()).unwrap());
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(build_builtin("nope"), Err(Error::UnknownBuiltin(_))));
        assert!(build_builtin("fc7:Xb").is_err());
        assert_eq!(build_builtin("fc7:Bt*").unwrap().name(), "FC*_Bt");
    }

    #[test]
    fn starred_designations() {
        let tb = build_seven_valued("Tb*".parse().unwrap());
        assert_eq!(designated_names(&tb), ["Bb", "Tf", "Tn"]);
        let tf = build_seven_valued("Tf*".parse().unwrap());
        assert_eq!(designated_names(&tf), ["Tf", "Tn"]);
        assert!(tf.value("Bf").is_some());
    }

    #[test]
    fn seven_valued_family() {
        let full = fc();
        for spec in SevenValuedSpec::all() {
            let m = build_seven_valued(spec);
            assert!(validate_matrix(&m.to_raw()).ok());
            assert_eq!(m.len(), 7);
            let d = m.designated_count();
            let dominant_designated = matches!(spec.dominant(), 'f' | 'n');
            let expected = if dominant_designated != spec.starred { 3 } else { 2 };
            assert_eq!(d, expected, "{spec}");
            if !spec.starred {
                for v in m.values() {
                    let name = m.value_name(v);
                    assert_eq!(m.designates(v), full.designates(full.lookup(name).unwrap()));
                }
            }
            // projection is idempotent on kept values
            for v in m.values() {
                let i = full.lookup(m.value_name(v)).unwrap().index();
                assert_eq!(seven_valued_projection(spec, i), i);
            }
        }
    }

    #[test]
    fn seven_valued_tables_follow_fc() {
        // FC_Bn: Bf ∧ Tn computed in FC is Bf ∧ Tn = (B∧T, f∧n) = (B, f); FDE part is B, so kept.
        let bn = build_seven_valued("Bn".parse().unwrap());
        let full = fc();
        let spec: SevenValuedSpec = "Bn".parse().unwrap();
        let in_fc = full.apply_named("and", &["Bf", "Tn"]).unwrap();
        let projected = &full.value_names()[spec.project(full.lookup(in_fc).unwrap().index())];
        assert_eq!(bn.apply_named("and", &["Bf", "Tn"]).unwrap(), projected);
        // every table entry equals the projected FC entry
        for s in SevenValuedSpec::all() {
            let m = build_seven_valued(s);
            for op in m.ops() {
                for t in crate::matrix::Tuples::new(m.len(), op.arity()) {
                    let names: Vec<&str> = t.iter().map(|v| m.value_name(*v)).collect();
                    let r = full.apply_named(op.name(), &names).unwrap();
                    let p = &full.value_names()[s.project(full.lookup(r).unwrap().index())];
                    assert_eq!(m.value_name(op.eval(&t)), p);
                }
            }
        }
    }
}
