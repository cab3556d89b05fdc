//! JSON forms of structure tables, gradings, Lie structures and solver results.
//!
//! Rationals travel as `[num, den, index]` triples in lowest terms. Emission is
//! compact and canonical, so re-reading and re-emitting is byte-identical.

use serde::{Deserialize, Serialize};

use crate::algebra::StructureTable;
use crate::lie::{GradedLieStructure, LieStructure};
use crate::rational::{ratio, to_pair, SparseVec};
use crate::solver::{Grading, GradingOutcome, Obstruction, ObstructionWitness, ParityEquation};
use crate::{Error, Result};

type Triple = (i64, i64, usize);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    dim: usize,
    names: Vec<String>,
    table: Vec<Vec<Vec<Triple>>>,
}

fn parse_error(what: &str, e: serde_json::Error) -> Error {
    Error::Invalid(format!("malformed {what} JSON: {e}"))
}

fn to_triples(v: &SparseVec) -> Result<Vec<Triple>> {
    v.terms()
        .iter()
        .map(|(c, i)| {
            let (n, d) = to_pair(c)?;
            Ok((n, d, *i))
        })
        .collect()
}

fn from_triples(triples: &[Triple]) -> Result<SparseVec> {
    let terms = triples.iter().map(|&(n, d, i)| Ok((ratio(n, d)?, i))).collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_terms(terms))
}

pub fn table_to_json(t: &StructureTable) -> Result<String> {
    let table = t
        .cells()
        .iter()
        .map(|row| row.iter().map(to_triples).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let j = TableJson { dim: t.dim(), names: t.names().to_vec(), table };
    Ok(serde_json::to_string(&j).expect("plain data serializes"))
}

pub fn table_from_json(s: &str) -> Result<StructureTable> {
    let j: TableJson = serde_json::from_str(s).map_err(|e| parse_error("structure table", e))?;
    if j.names.len() != j.dim {
        return Err(Error::Dimension { expected: j.dim, found: j.names.len() });
    }
    let table = j
        .table
        .iter()
        .map(|row| row.iter().map(|c| from_triples(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    StructureTable::new(j.names, table)
}

pub fn grading_to_json(g: &Grading) -> String {
    serde_json::to_string(g).expect("plain data serializes")
}

pub fn grading_from_json(s: &str) -> Result<Grading> {
    serde_json::from_str(s).map_err(|e| parse_error("grading", e))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketJson {
    i: usize,
    j: usize,
    terms: Vec<Triple>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LieJson {
    dim: usize,
    names: Vec<String>,
    brackets: Vec<BracketJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Grading>,
}

fn lie_brackets(s: &LieStructure) -> Result<Vec<BracketJson>> {
    let mut out = Vec::new();
    for i in 0..s.dim() {
        for j in (i + 1)..s.dim() {
            let v = s.bracket_basis(i, j);
            if !v.is_zero() {
                out.push(BracketJson { i, j, terms: to_triples(v)? });
            }
        }
    }
    Ok(out)
}

pub fn lie_to_json(s: &LieStructure) -> Result<String> {
    let j = LieJson { dim: s.dim(), names: s.names().to_vec(), brackets: lie_brackets(s)?, grading: None };
    Ok(serde_json::to_string(&j).expect("plain data serializes"))
}

/// Same shape as the Lie schema plus a `grading` object.
pub fn graded_lie_to_json(gs: &GradedLieStructure) -> Result<String> {
    let s = gs.lie();
    let j = LieJson {
        dim: s.dim(),
        names: s.names().to_vec(),
        brackets: lie_brackets(s)?,
        grading: Some(gs.grading().clone()),
    };
    Ok(serde_json::to_string(&j).expect("plain data serializes"))
}

pub fn lie_from_json(s: &str) -> Result<LieStructure> {
    let j: LieJson = serde_json::from_str(s).map_err(|e| parse_error("Lie structure", e))?;
    if j.names.len() != j.dim {
        return Err(Error::Dimension { expected: j.dim, found: j.names.len() });
    }
    let brackets = j.brackets.iter().map(|b| Ok((b.i, b.j, from_triples(&b.terms)?))).collect::<Result<Vec<_>>>()?;
    LieStructure::from_brackets(j.names, brackets)
}

#[derive(Serialize)]
struct SolveJson<'a> {
    feasible: bool,
    grading: Option<&'a Grading>,
    witness: Option<&'a ObstructionWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a [ParityEquation]>,
}

/// `{"feasible": .., "grading": .. | null, "witness": {"l1"..} | null}`, plus a
/// `certificate` list when infeasibility has no four-element witness.
pub fn outcome_to_json(outcome: &GradingOutcome) -> String {
    let j = match outcome {
        GradingOutcome::Feasible(g) => SolveJson { feasible: true, grading: Some(g), witness: None, certificate: None },
        GradingOutcome::Infeasible(Obstruction::Witness(w)) => {
            SolveJson { feasible: false, grading: None, witness: Some(w), certificate: None }
        }
        GradingOutcome::Infeasible(Obstruction::Certificate(rows)) => {
            SolveJson { feasible: false, grading: None, witness: None, certificate: Some(rows) }
        }
    };
    serde_json::to_string(&j).expect("plain data serializes")
}
