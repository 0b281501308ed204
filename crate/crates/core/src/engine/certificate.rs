//! Certificates: one tuple, one case, a verdict and the integers that back it.
//!
//! Every witness entry is a function of the tuple alone, so a certificate
//! can be re-checked without trusting the code that produced it.
//! [`Certificate::verify`] recomputes each entry by a separate route (full
//! powers where [`apply_rule`] uses modular exponentiation, closed quotients
//! where it uses Horner sums) and re-checks the verdict by exact evaluation.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{is_power_of_two, prime_power_decomposition, require_normalized, CaseId, EngineError};
use crate::numtheory::{is_prime, vp_unchecked, CatalanTuple, Integer};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// A cheap obstruction rules the tuple out.
    Excluded,
    /// The tuple is `(3, 2, 2, 3)`.
    CatalanSolution,
    /// Exact evaluation shows `x^p - y^q != 1`.
    DirectCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Obstruction {
    Mod4,
    Mod8,
    OddCofactor,
    InequalityChain,
    GcdValuation,
    Direct,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub type Witness = BTreeMap<String, Integer>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub case_id: CaseId,
    pub tuple: CatalanTuple,
    pub verdict: Verdict,
    pub obstruction: Obstruction,
    pub witness: Witness,
}

mod key {
    pub const X_MOD4: &str = "x_mod4";
    pub const LHS_MOD4: &str = "lhs_mod4";
    pub const RHS_MOD4: &str = "rhs_mod4";
    pub const S: &str = "s";
    pub const X_MOD8: &str = "x_mod8";
    pub const LHS_MOD8: &str = "lhs_mod8";
    pub const RHS_MOD8: &str = "rhs_mod8";
    pub const Y_LOWER_BOUND: &str = "y_lower_bound";
    pub const Z: &str = "z";
    pub const COFACTOR_MOD_Z: &str = "cofactor_mod_z";
    pub const GCD_Z_COFACTOR: &str = "gcd_z_cofactor";
    pub const ELL: &str = "ell";
    pub const ELL_EXPONENT: &str = "ell_exponent";
    pub const V_ELL_X_MINUS_1: &str = "v_ell_x_minus_1";
    pub const V_ELL_COFACTOR: &str = "v_ell_cofactor";
    pub const FOUR_POW_P: &str = "four_pow_p";
    pub const FOUR_POW_Q: &str = "four_pow_q";
    pub const GCD_X_MINUS_1_COFACTOR: &str = "gcd_x_minus_1_cofactor";
    pub const DIFFERENCE: &str = "difference";
}

/// Whether the case's cheap obstruction rules `t` out. Computes no witness.
pub(crate) fn cheap_exclusion(case: CaseId, t: &CatalanTuple) -> bool {
    let (x, p, y, q) = (t.x(), t.p(), t.y(), t.q());
    match case {
        // y^2 + 1 is 1 or 2 mod 4, x^p is 0 mod 4
        CaseId::I => q == 2 && x.is_even(),
        // (y^q + 1)/(y + 1) is odd and >= 3, x^p is a power of 2
        CaseId::III => q % 2 == 1 && is_power_of_two(x),
        // x^p - 1 = x - 1 != 0 mod 8, y^q = 0 mod 8
        CaseId::IV => {
            p % 2 == 1
                && q % 2 == 1
                && y.is_even()
                && x.is_odd()
                && !(x - 1u32).is_multiple_of(&Integer::from(8))
        }
        // y + 1 >= 3^(p-1) for any solution with x = q
        CaseId::V => {
            p % 2 == 1 && x.is_odd() && *x == Integer::from(q) && *y < three_pow_minus_one(p)
        }
        CaseId::II | CaseId::VI | CaseId::VII | CaseId::VIII => false,
    }
}

fn three_pow_minus_one(p: u32) -> Integer {
    Pow::pow(&Integer::from(3), p - 1) - 1u32
}

/// `1 + x + ... + x^(p-1)` by Horner's rule.
fn geometric_cofactor(x: &Integer, p: u32) -> Integer {
    (1..p).fold(Integer::one(), |acc, _| acc * x + 1u32)
}

/// `1 - y + y^2 - ... + y^(q-1)` by Horner's rule.
fn alternating_cofactor(y: &Integer, q: u32) -> Integer {
    let neg = -y;
    (1..q).fold(Integer::one(), |acc, _| acc * &neg + 1u32)
}

fn insert(w: &mut Witness, k: &str, v: impl Into<Integer>) {
    w.insert(k.to_string(), v.into());
}

fn cheap_witness(case: CaseId, t: &CatalanTuple) -> (Obstruction, Witness) {
    let (x, p, y, q) = (t.x(), t.p(), t.y(), t.q());
    let mut w = Witness::new();
    let obstruction = match case {
        CaseId::I => {
            let four = Integer::from(4);
            insert(&mut w, key::X_MOD4, x.mod_floor(&four));
            insert(
                &mut w,
                key::LHS_MOD4,
                (y.modpow(&2u32.into(), &four) + 1u32).mod_floor(&four),
            );
            insert(&mut w, key::RHS_MOD4, x.modpow(&p.into(), &four));
            Obstruction::Mod4
        }
        CaseId::III => {
            insert(&mut w, key::S, alternating_cofactor(y, q));
            Obstruction::OddCofactor
        }
        CaseId::IV => {
            let eight = Integer::from(8);
            insert(&mut w, key::X_MOD8, x.mod_floor(&eight));
            insert(
                &mut w,
                key::LHS_MOD8,
                (x.modpow(&p.into(), &eight) - 1u32).mod_floor(&eight),
            );
            insert(&mut w, key::RHS_MOD8, y.modpow(&q.into(), &eight));
            Obstruction::Mod8
        }
        CaseId::V => {
            insert(&mut w, key::Y_LOWER_BOUND, three_pow_minus_one(p));
            Obstruction::InequalityChain
        }
        _ => unreachable!("case {case} has no cheap obstruction"),
    };
    (obstruction, w)
}

/// Witnesses recorded before falling back to exact evaluation.
fn recorded_witness(case: CaseId, t: &CatalanTuple) -> (Obstruction, Witness) {
    let (x, p, y, q) = (t.x(), t.p(), t.y(), t.q());
    let mut w = Witness::new();
    let x_minus_1 = x - 1u32;
    let obstruction = match case {
        CaseId::VI => {
            let z = &x_minus_1 / y;
            let cofactor = geometric_cofactor(x, p);
            insert(&mut w, key::COFACTOR_MOD_Z, cofactor.mod_floor(&z));
            insert(&mut w, key::GCD_Z_COFACTOR, z.gcd(&cofactor));
            insert(&mut w, key::Z, z);
            Obstruction::GcdValuation
        }
        CaseId::VII => {
            let (ell, c) = prime_power_decomposition(y).expect("case VII hypothesis");
            let cofactor = geometric_cofactor(x, p);
            insert(&mut w, key::V_ELL_X_MINUS_1, vp_unchecked(&x_minus_1, &ell));
            insert(&mut w, key::V_ELL_COFACTOR, vp_unchecked(&cofactor, &ell));
            insert(&mut w, key::ELL_EXPONENT, c);
            insert(&mut w, key::ELL, ell);
            Obstruction::GcdValuation
        }
        CaseId::VIII => {
            let four = Integer::from(4);
            let cofactor = geometric_cofactor(x, p);
            insert(&mut w, key::FOUR_POW_P, Pow::pow(&four, p));
            insert(&mut w, key::FOUR_POW_Q, Pow::pow(&four, q));
            insert(
                &mut w,
                key::GCD_X_MINUS_1_COFACTOR,
                x_minus_1.gcd(&cofactor),
            );
            Obstruction::InequalityChain
        }
        _ => Obstruction::Direct,
    };
    (obstruction, w)
}

/// Certifies `t` under case `case`.
///
/// The case's cheap obstruction is tried first; otherwise its bookkeeping
/// witnesses are recorded and the verdict comes from evaluating
/// `x^p - y^q` exactly.
pub fn apply_rule(case: CaseId, t: &CatalanTuple) -> Result<Certificate, EngineError> {
    require_normalized(t)?;
    if !case.holds_for(t) {
        return Err(EngineError::HypothesisNotSatisfied {
            case,
            tuple: t.clone(),
        });
    }
    if cheap_exclusion(case, t) {
        let (obstruction, witness) = cheap_witness(case, t);
        return Ok(Certificate {
            case_id: case,
            tuple: t.clone(),
            verdict: Verdict::Excluded,
            obstruction,
            witness,
        });
    }
    let (obstruction, mut witness) = recorded_witness(case, t);
    let difference = t.difference();
    let verdict = if difference.is_one() {
        if *t != CatalanTuple::catalan_solution() {
            return Err(EngineError::UnexpectedSolution(t.clone()));
        }
        Verdict::CatalanSolution
    } else {
        Verdict::DirectCheck
    };
    witness.insert(key::DIFFERENCE.to_string(), difference);
    Ok(Certificate {
        case_id: case,
        tuple: t.clone(),
        verdict,
        obstruction,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("tuple does not have prime exponents")]
    NotNormalized,
    #[error("tuple does not satisfy the hypothesis of case {0}")]
    Hypothesis(CaseId),
    #[error("obstruction {obstruction} does not fit verdict {verdict} under case {case}")]
    Mismatch {
        case: CaseId,
        verdict: Verdict,
        obstruction: Obstruction,
    },
    #[error("witness keys {found:?}, expected {expected:?}")]
    WitnessKeys {
        found: Vec<String>,
        expected: Vec<String>,
    },
    #[error("witness {key} = {stored}, recomputed {derived}")]
    WitnessValue {
        key: String,
        stored: Integer,
        derived: Integer,
    },
    #[error("obstruction {0} does not actually separate the two sides")]
    ObstructionFails(Obstruction),
    #[error("verdict {0} contradicts exact evaluation")]
    VerdictWrong(Verdict),
}

fn expected_keys(case: CaseId, verdict: Verdict) -> &'static [&'static str] {
    use key::*;
    match (verdict, case) {
        (Verdict::Excluded, CaseId::I) => &[LHS_MOD4, RHS_MOD4, X_MOD4],
        (Verdict::Excluded, CaseId::III) => &[S],
        (Verdict::Excluded, CaseId::IV) => &[LHS_MOD8, RHS_MOD8, X_MOD8],
        (Verdict::Excluded, CaseId::V) => &[Y_LOWER_BOUND],
        (Verdict::Excluded, _) => &[],
        (_, CaseId::VI) => &[COFACTOR_MOD_Z, DIFFERENCE, GCD_Z_COFACTOR, Z],
        (_, CaseId::VII) => &[
            DIFFERENCE,
            ELL,
            ELL_EXPONENT,
            V_ELL_COFACTOR,
            V_ELL_X_MINUS_1,
        ],
        (_, CaseId::VIII) => &[DIFFERENCE, FOUR_POW_P, FOUR_POW_Q, GCD_X_MINUS_1_COFACTOR],
        _ => &[DIFFERENCE],
    }
}

fn expected_obstruction(case: CaseId, verdict: Verdict) -> Option<Obstruction> {
    Some(match (verdict, case) {
        (Verdict::Excluded, CaseId::I) => Obstruction::Mod4,
        (Verdict::Excluded, CaseId::III) => Obstruction::OddCofactor,
        (Verdict::Excluded, CaseId::IV) => Obstruction::Mod8,
        (Verdict::Excluded, CaseId::V) => Obstruction::InequalityChain,
        (Verdict::Excluded, _) => return None,
        (_, CaseId::VI | CaseId::VII) => Obstruction::GcdValuation,
        (_, CaseId::VIII) => Obstruction::InequalityChain,
        _ => Obstruction::Direct,
    })
}

/// Recomputes one witness entry from the tuple by the direct route.
fn derive(key: &str, t: &CatalanTuple, stored: &Witness) -> Option<Integer> {
    let (x, p, y, q) = (t.x(), t.p(), t.y(), t.q());
    let x_pow = || t.x_pow();
    let y_pow = || t.y_pow();
    let cofactor = || (x_pow() - 1u32) / (x - 1u32);
    let z = || (x - 1u32) / y;
    let rem = |n: Integer, m: u32| n.mod_floor(&Integer::from(m));
    Some(match key {
        key::X_MOD4 => rem(x.clone(), 4),
        key::LHS_MOD4 => rem(y * y + 1u32, 4),
        key::RHS_MOD4 => rem(x_pow(), 4),
        key::S => {
            let (s, r) = (y_pow() + 1u32).div_rem(&(y + 1u32));
            if !r.is_zero() {
                return None;
            }
            s
        }
        key::X_MOD8 => rem(x.clone(), 8),
        key::LHS_MOD8 => rem(x_pow() - 1u32, 8),
        key::RHS_MOD8 => rem(y_pow(), 8),
        key::Y_LOWER_BOUND => Pow::pow(&Integer::from(3), p - 1) - 1u32,
        key::Z => z(),
        key::COFACTOR_MOD_Z => cofactor().mod_floor(&z()),
        key::GCD_Z_COFACTOR => z().gcd(&cofactor()),
        // the prime power decomposition is unique; confirm rather than refactor
        key::ELL | key::ELL_EXPONENT => {
            let ell = stored.get(key::ELL)?;
            let c = stored.get(key::ELL_EXPONENT)?.to_u32()?;
            if !is_prime(ell) || Pow::pow(ell, c) != *y {
                return None;
            }
            stored.get(key)?.clone()
        }
        key::V_ELL_X_MINUS_1 => {
            let ell = stored.get(key::ELL)?;
            vp_unchecked(&(x - 1u32), ell).into()
        }
        key::V_ELL_COFACTOR => {
            let ell = stored.get(key::ELL)?;
            vp_unchecked(&cofactor(), ell).into()
        }
        key::FOUR_POW_P => Integer::one() << (2 * p),
        key::FOUR_POW_Q => Integer::one() << (2 * q),
        key::GCD_X_MINUS_1_COFACTOR => (x - 1u32).gcd(&cofactor()),
        key::DIFFERENCE => x_pow() - y_pow(),
        _ => return None,
    })
}

impl Certificate {
    /// Re-derives every witness entry and re-checks the verdict.
    pub fn verify(&self) -> Result<(), VerifyError> {
        let t = &self.tuple;
        if !t.has_prime_exponents() {
            return Err(VerifyError::NotNormalized);
        }
        if !self.case_id.holds_for(t) {
            return Err(VerifyError::Hypothesis(self.case_id));
        }
        if expected_obstruction(self.case_id, self.verdict) != Some(self.obstruction) {
            return Err(VerifyError::Mismatch {
                case: self.case_id,
                verdict: self.verdict,
                obstruction: self.obstruction,
            });
        }
        let expected: Vec<String> = expected_keys(self.case_id, self.verdict)
            .iter()
            .map(|k| k.to_string())
            .collect();
        let found: Vec<String> = self.witness.keys().cloned().collect();
        if found != expected {
            return Err(VerifyError::WitnessKeys { found, expected });
        }
        for (k, stored) in &self.witness {
            let derived = derive(k, t, &self.witness).unwrap_or_else(|| Integer::from(-1));
            if &derived != stored {
                return Err(VerifyError::WitnessValue {
                    key: k.clone(),
                    stored: stored.clone(),
                    derived,
                });
            }
        }
        self.check_obstruction_logic()?;

        let difference = t.difference();
        let consistent = match self.verdict {
            Verdict::CatalanSolution => {
                difference.is_one() && *t == CatalanTuple::catalan_solution()
            }
            Verdict::Excluded | Verdict::DirectCheck => !difference.is_one(),
        };
        if consistent {
            Ok(())
        } else {
            Err(VerifyError::VerdictWrong(self.verdict))
        }
    }

    fn check_obstruction_logic(&self) -> Result<(), VerifyError> {
        if self.verdict != Verdict::Excluded {
            return Ok(());
        }
        let w = |k: &str| &self.witness[k];
        let t = &self.tuple;
        let holds = match self.obstruction {
            Obstruction::Mod4 => w(key::LHS_MOD4) != w(key::RHS_MOD4),
            Obstruction::Mod8 => w(key::LHS_MOD8) != w(key::RHS_MOD8),
            Obstruction::OddCofactor => {
                let s = w(key::S);
                s.is_odd() && *s >= Integer::from(3) && is_power_of_two(t.x())
            }
            Obstruction::InequalityChain => {
                t.p() % 2 == 1 && t.x().is_odd() && t.y() < w(key::Y_LOWER_BOUND)
            }
            _ => false,
        };
        if holds {
            Ok(())
        } else {
            Err(VerifyError::ObstructionFails(self.obstruction))
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson::from(self)).expect("certificate serialises")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CertificateJson::from(self)).expect("certificate serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, CertificateParseError> {
        let wire: CertificateJson = serde_json::from_str(s)?;
        wire.try_into()
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self, CertificateParseError> {
        let wire: CertificateJson = serde_json::from_value(v)?;
        wire.try_into()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case {}: {} {} ({})",
            self.case_id, self.tuple, self.verdict, self.obstruction
        )?;
        for (k, v) in &self.witness {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CertificateParseError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version {0}")]
    SchemaVersion(u32),
    #[error("field {field} = {value:?} is not a decimal integer")]
    Integer { field: String, value: String },
    #[error("invalid tuple: {0}")]
    Tuple(String),
}

/// Integers travel as decimal strings.
#[derive(Debug, Serialize, Deserialize)]
struct CertificateJson {
    case_id: CaseId,
    tuple: TupleJson,
    verdict: Verdict,
    obstruction: Obstruction,
    witness: BTreeMap<String, String>,
    schema_version: u32,
}

#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct TupleJson {
    x: String,
    p: String,
    y: String,
    q: String,
}

impl From<&CatalanTuple> for TupleJson {
    fn from(t: &CatalanTuple) -> Self {
        TupleJson {
            x: t.x().to_string(),
            p: t.p().to_string(),
            y: t.y().to_string(),
            q: t.q().to_string(),
        }
    }
}

/// A tuple in the certificate wire format, entries as decimal strings.
pub fn tuple_json(t: &CatalanTuple) -> serde_json::Value {
    serde_json::to_value(TupleJson::from(t)).expect("tuple serialises")
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            case_id: c.case_id,
            tuple: (&c.tuple).into(),
            verdict: c.verdict,
            obstruction: c.obstruction,
            witness: c
                .witness
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            schema_version: SCHEMA_VERSION,
        }
    }
}

fn parse_int(field: &str, value: &str) -> Result<Integer, CertificateParseError> {
    value.parse().map_err(|_| CertificateParseError::Integer {
        field: field.to_string(),
        value: value.to_string(),
    })
}

fn parse_exp(field: &str, value: &str) -> Result<u32, CertificateParseError> {
    value.parse().map_err(|_| CertificateParseError::Integer {
        field: field.to_string(),
        value: value.to_string(),
    })
}

impl TryFrom<CertificateJson> for Certificate {
    type Error = CertificateParseError;

    fn try_from(wire: CertificateJson) -> Result<Self, Self::Error> {
        if wire.schema_version != SCHEMA_VERSION {
            return Err(CertificateParseError::SchemaVersion(wire.schema_version));
        }
        let tj = &wire.tuple;
        let tuple = CatalanTuple::new(
            parse_int("x", &tj.x)?,
            parse_exp("p", &tj.p)?,
            parse_int("y", &tj.y)?,
            parse_exp("q", &tj.q)?,
        )
        .map_err(|e| CertificateParseError::Tuple(e.to_string()))?;
        let witness = wire
            .witness
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_int(k, v)?)))
            .collect::<Result<Witness, CertificateParseError>>()?;
        Ok(Certificate {
            case_id: wire.case_id,
            tuple,
            verdict: wire.verdict,
            obstruction: wire.obstruction,
            witness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::classify;

    fn t(x: u64, p: u32, y: u64, q: u32) -> CatalanTuple {
        CatalanTuple::from_u64(x, p, y, q)
    }

    fn wit(pairs: &[(&str, i64)]) -> Witness {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), Integer::from(*v)))
            .collect()
    }

    #[test]
    fn mod8_example() {
        let c = apply_rule(CaseId::IV, &t(11, 3, 2, 3)).unwrap();
        assert_eq!(c.verdict, Verdict::Excluded);
        assert_eq!(c.obstruction, Obstruction::Mod8);
        assert_eq!(
            c.witness,
            wit(&[("x_mod8", 3), ("lhs_mod8", 2), ("rhs_mod8", 0)])
        );
        c.verify().unwrap();
    }

    #[test]
    fn solution_under_case_ii() {
        let c = apply_rule(CaseId::II, &CatalanTuple::catalan_solution()).unwrap();
        assert_eq!(c.verdict, Verdict::CatalanSolution);
        assert_eq!(c.witness, wit(&[("difference", 1)]));
        c.verify().unwrap();
    }

    #[test]
    fn odd_cofactor_example() {
        let c = apply_rule(CaseId::III, &t(8, 3, 3, 5)).unwrap();
        assert_eq!(c.verdict, Verdict::Excluded);
        assert_eq!(c.obstruction, Obstruction::OddCofactor);
        assert_eq!(c.witness, wit(&[("s", 61)]));
        c.verify().unwrap();
    }

    #[test]
    fn mod4_case_i() {
        let c = apply_rule(CaseId::I, &t(6, 3, 15, 2)).unwrap();
        assert_eq!(c.obstruction, Obstruction::Mod4);
        assert_eq!(
            c.witness,
            wit(&[("x_mod4", 2), ("lhs_mod4", 2), ("rhs_mod4", 0)])
        );
        c.verify().unwrap();
        // x odd: no cheap obstruction
        let c = apply_rule(CaseId::I, &t(5, 3, 11, 2)).unwrap();
        assert_eq!(c.verdict, Verdict::DirectCheck);
        assert_eq!(c.obstruction, Obstruction::Direct);
        assert_eq!(c.witness, wit(&[("difference", 4)]));
        c.verify().unwrap();
    }

    #[test]
    fn case_v_bound() {
        // x = q = 5, p = 7: y must reach 3^6 - 1 = 728
        let c = apply_rule(CaseId::V, &t(5, 7, 3, 5)).unwrap();
        assert_eq!(c.verdict, Verdict::Excluded);
        assert_eq!(c.witness, wit(&[("y_lower_bound", 728)]));
        c.verify().unwrap();
        let c = apply_rule(CaseId::V, &t(5, 3, 8, 5)).unwrap();
        assert_eq!(c.verdict, Verdict::DirectCheck);
        c.verify().unwrap();
    }

    #[test]
    fn gcd_witnesses() {
        // y = 5 divides x - 1 = 10, z = 2, cofactor = 1 + 11 + 121 = 133
        let c = apply_rule(CaseId::VI, &t(11, 3, 5, 3)).unwrap();
        assert_eq!(c.obstruction, Obstruction::GcdValuation);
        assert_eq!(c.witness["z"], Integer::from(2));
        assert_eq!(c.witness["cofactor_mod_z"], Integer::from(1));
        assert_eq!(c.witness["gcd_z_cofactor"], Integer::from(1));
        c.verify().unwrap();

        let c = apply_rule(CaseId::VII, &t(10, 3, 9, 3)).unwrap();
        assert_eq!(c.witness["ell"], Integer::from(3));
        assert_eq!(c.witness["ell_exponent"], Integer::from(2));
        assert_eq!(c.witness["v_ell_x_minus_1"], Integer::from(2));
        // 1 + 10 + 100 = 111 = 3 · 37
        assert_eq!(c.witness["v_ell_cofactor"], Integer::from(1));
        c.verify().unwrap();

        let c = apply_rule(CaseId::VIII, &t(10, 3, 9, 3)).unwrap();
        assert_eq!(c.obstruction, Obstruction::InequalityChain);
        assert_eq!(c.witness["four_pow_p"], Integer::from(64));
        assert_eq!(c.witness["gcd_x_minus_1_cofactor"], Integer::from(3));
        c.verify().unwrap();
    }

    #[test]
    fn solution_certified_under_every_case() {
        let s = CatalanTuple::catalan_solution();
        for case in classify(&s).unwrap() {
            let c = apply_rule(case, &s).unwrap();
            assert_eq!(c.verdict, Verdict::CatalanSolution, "case {case}");
            c.verify().unwrap();
        }
    }

    #[test]
    fn hypothesis_required() {
        let err = apply_rule(CaseId::I, &t(11, 3, 2, 3)).unwrap_err();
        assert!(matches!(
            err,
            EngineError::HypothesisNotSatisfied {
                case: CaseId::I,
                ..
            }
        ));
        let err = apply_rule(CaseId::II, &t(2, 4, 2, 3)).unwrap_err();
        assert!(matches!(err, EngineError::NotNormalized(_)));
    }

    #[test]
    fn tampering_is_detected() {
        let good = apply_rule(CaseId::IV, &t(11, 3, 2, 3)).unwrap();

        let mut c = good.clone();
        c.witness.insert("lhs_mod8".into(), Integer::from(0));
        assert!(matches!(c.verify(), Err(VerifyError::WitnessValue { .. })));

        let mut c = good.clone();
        c.witness.remove("x_mod8");
        assert!(matches!(c.verify(), Err(VerifyError::WitnessKeys { .. })));

        let mut c = good.clone();
        c.verdict = Verdict::CatalanSolution;
        assert!(c.verify().is_err());

        let mut c = good.clone();
        c.case_id = CaseId::I;
        assert_eq!(c.verify(), Err(VerifyError::Hypothesis(CaseId::I)));

        let mut c = apply_rule(CaseId::VII, &t(10, 3, 9, 3)).unwrap();
        c.witness.insert("ell".into(), Integer::from(9));
        c.witness.insert("ell_exponent".into(), Integer::from(1));
        assert!(c.verify().is_err());
    }

    #[test]
    fn json_schema() {
        let c = apply_rule(CaseId::IV, &t(11, 3, 2, 3)).unwrap();
        let v = c.to_json_value();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["case_id"], "IV");
        assert_eq!(v["verdict"], "Excluded");
        assert_eq!(v["obstruction"], "Mod8");
        assert_eq!(v["tuple"]["x"], "11");
        assert_eq!(v["tuple"]["q"], "3");
        assert_eq!(v["witness"]["lhs_mod8"], "2");
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn json_rejects_bad_input() {
        let c = apply_rule(CaseId::IV, &t(11, 3, 2, 3)).unwrap();
        let mut v = c.to_json_value();
        v["schema_version"] = 2.into();
        assert!(matches!(
            Certificate::from_json_value(v),
            Err(CertificateParseError::SchemaVersion(2))
        ));
        let mut v = c.to_json_value();
        v["witness"]["x_mod8"] = "3.5".into();
        assert!(matches!(
            Certificate::from_json_value(v),
            Err(CertificateParseError::Integer { .. })
        ));
        let mut v = c.to_json_value();
        v["tuple"]["y"] = "1".into();
        assert!(matches!(
            Certificate::from_json_value(v),
            Err(CertificateParseError::Tuple(_))
        ));
    }
}
