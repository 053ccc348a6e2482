// Copyright 2026 The flyqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Circuit representation and its line-oriented text format.
//!
//! ```text
//! qubits 2
//! h 0          # comment
//! p 1 0.785398163397
//! cp 0 1 3.14159265359
//! cnot 0 1
//! swap 0 1
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gates::{self, GateUnitary, Provenance};
use crate::linalg::{adjoint, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind
{
    H,
    P,
    Cp,
    Cnot,
    Swap,
    U1,
    U2,
}

impl GateKind
{
    pub fn name(self) -> &'static str
    {
        match self
        {
            GateKind::H => "h",
            GateKind::P => "p",
            GateKind::Cp => "cp",
            GateKind::Cnot => "cnot",
            GateKind::Swap => "swap",
            GateKind::U1 => "u1",
            GateKind::U2 => "u2",
        }
    }
}

impl std::fmt::Display for GateKind
{
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result
    {
        f.write_str(self.name())
    }
}

/// One circuit instruction. Two-qubit matrices use the first listed qubit
/// as the more significant bit.
#[derive(Debug, Clone, PartialEq)]
pub enum Instruction
{
    H(usize),
    P(usize, f64),
    Cp(usize, usize, f64),
    Cnot
    {
        control: usize, target: usize
    },
    Swap(usize, usize),
    /// Arbitrary single-qubit unitary (input to the compiler only).
    U1(usize, CMatrix),
    /// Arbitrary two-qubit unitary (input to the compiler only).
    U2(usize, usize, CMatrix),
}

impl Instruction
{
    pub fn kind(&self) -> GateKind
    {
        match self
        {
            Instruction::H(_) => GateKind::H,
            Instruction::P(..) => GateKind::P,
            Instruction::Cp(..) => GateKind::Cp,
            Instruction::Cnot { .. } => GateKind::Cnot,
            Instruction::Swap(..) => GateKind::Swap,
            Instruction::U1(..) => GateKind::U1,
            Instruction::U2(..) => GateKind::U2,
        }
    }

    pub fn targets(&self) -> Vec<usize>
    {
        match *self
        {
            Instruction::H(q) | Instruction::P(q, _) | Instruction::U1(q, _) => vec![q],
            Instruction::Cp(a, b, _) | Instruction::Swap(a, b) | Instruction::U2(a, b, _) => vec![a, b],
            Instruction::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn is_two_qubit(&self) -> bool
    {
        self.targets().len() == 2
    }

    /// The gate matrix, ordered like [`Instruction::targets`].
    pub fn gate(&self) -> Result<GateUnitary>
    {
        Ok(match self
        {
            Instruction::H(_) => gates::hadamard(),
            Instruction::P(_, phi) => gates::phase_gate(*phi),
            Instruction::Cp(_, _, phi) => gates::controlled_phase(*phi),
            Instruction::Cnot { .. } => gates::cnot(),
            Instruction::Swap(..) => gates::swap(),
            Instruction::U1(_, m) | Instruction::U2(_, _, m) => GateUnitary::new(m.clone(), Provenance::Ideal, 0.0)?,
        })
    }

    /// The inverse instruction.
    pub fn inverse(&self) -> Instruction
    {
        match self
        {
            Instruction::P(q, phi) => Instruction::P(*q, -phi),
            Instruction::Cp(a, b, phi) => Instruction::Cp(*a, *b, -phi),
            Instruction::U1(q, m) => Instruction::U1(*q, adjoint(m)),
            Instruction::U2(a, b, m) => Instruction::U2(*a, *b, adjoint(m)),
            other => other.clone(),
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()>
    {
        let targets = self.targets();
        for &q in &targets
        {
            if q >= num_qubits
            {
                return Err(Error::QubitIndex { index: q, num_qubits });
            }
        }
        if targets.len() == 2 && targets[0] == targets[1]
        {
            return Err(Error::RepeatedTarget(targets[0]));
        }
        match self
        {
            Instruction::P(_, phi) | Instruction::Cp(_, _, phi) if !phi.is_finite() =>
            {
                Err(Error::domain(format!("phase must be finite, got {phi}")))
            }
            Instruction::U1(_, m) if m.dim() != (2, 2) => Err(Error::domain("u1 needs a 2x2 matrix")),
            Instruction::U2(_, _, m) if m.dim() != (4, 4) => Err(Error::domain("u2 needs a 4x4 matrix")),
            Instruction::U1(..) | Instruction::U2(..) => self.gate().map(|_| ()),
            _ => Ok(()),
        }
    }

    fn write_text(&self, out: &mut String) -> Result<()>
    {
        match self
        {
            Instruction::H(q) => writeln!(out, "h {q}"),
            Instruction::P(q, phi) => writeln!(out, "p {q} {phi}"),
            Instruction::Cp(a, b, phi) => writeln!(out, "cp {a} {b} {phi}"),
            Instruction::Cnot { control, target } => writeln!(out, "cnot {control} {target}"),
            Instruction::Swap(a, b) => writeln!(out, "swap {a} {b}"),
            Instruction::U1(..) | Instruction::U2(..) =>
            {
                return Err(Error::domain("explicit-matrix gates have no text form"));
            }
        }
        .expect("writing to a String cannot fail");
        Ok(())
    }
}

/// An ordered instruction list over a fixed qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit
{
    num_qubits: usize,
    instructions: Vec<Instruction>,
    /// Phase `θ` such that the circuit implements `e^{iθ}` times the product
    /// of its instructions. Only compilation of explicit matrices sets it.
    global_phase: f64,
}

impl Circuit
{
    pub fn new(num_qubits: usize) -> Result<Self>
    {
        if num_qubits == 0
        {
            return Err(Error::QubitCount(0, usize::MAX));
        }
        Ok(Circuit { num_qubits, instructions: Vec::new(), global_phase: 0.0 })
    }

    /// Builds and validates a circuit from instructions.
    pub fn from_instructions(num_qubits: usize, instructions: Vec<Instruction>) -> Result<Self>
    {
        let mut c = Self::new(num_qubits)?;
        for inst in instructions
        {
            c.push(inst)?;
        }
        Ok(c)
    }

    /// Appends an instruction after validating it against the register.
    pub fn push(&mut self, inst: Instruction) -> Result<&mut Self>
    {
        inst.validate(self.num_qubits)
            .map_err(|e| Error::Instruction { position: self.instructions.len(), source: Box::new(e) })?;
        self.instructions.push(inst);
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize
    {
        self.num_qubits
    }

    pub fn instructions(&self) -> &[Instruction]
    {
        &self.instructions
    }

    pub fn len(&self) -> usize
    {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool
    {
        self.instructions.is_empty()
    }

    pub fn global_phase(&self) -> f64
    {
        self.global_phase
    }

    pub fn set_global_phase(&mut self, phase: f64)
    {
        self.global_phase = phase;
    }

    /// Appends all instructions of `other`, which must act on the same register.
    pub fn extend(&mut self, other: &Circuit) -> Result<()>
    {
        if other.num_qubits != self.num_qubits
        {
            return Err(Error::DimensionMismatch(self.num_qubits, other.num_qubits));
        }
        self.instructions.extend(other.instructions.iter().cloned());
        self.global_phase += other.global_phase;
        Ok(())
    }

    /// The circuit that undoes this one.
    pub fn inverse(&self) -> Circuit
    {
        Circuit {
            num_qubits: self.num_qubits,
            instructions: self.instructions.iter().rev().map(Instruction::inverse).collect(),
            global_phase: -self.global_phase,
        }
    }

    /// Number of two-qubit instructions.
    pub fn two_qubit_count(&self) -> usize
    {
        self.instructions.iter().filter(|i| i.is_two_qubit()).count()
    }

    pub fn count_kind(&self, kind: GateKind) -> usize
    {
        self.instructions.iter().filter(|i| i.kind() == kind).count()
    }

    /// Renders the text format. A non-zero global phase is written as a
    /// comment so the output stays readable by [`Circuit::parse`].
    pub fn to_text(&self) -> Result<String>
    {
        let mut out = format!("qubits {}\n", self.num_qubits);
        if self.global_phase != 0.0
        {
            writeln!(out, "# global phase {}", self.global_phase).expect("writing to a String cannot fail");
        }
        for inst in &self.instructions
        {
            inst.write_text(&mut out)?;
        }
        Ok(out)
    }

    /// Parses the text format. Syntax problems are reported as
    /// [`Error::Parse`] with a 1-based line number; well-formed lines that
    /// name invalid qubits are reported as [`Error::Instruction`].
    pub fn parse(text: &str) -> Result<Circuit>
    {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate()
        {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty()
            {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let perr = |message: String| Error::Parse { line, message };

            let Some(c) = circuit.as_mut()
            else
            {
                if tokens[0] != "qubits"
                {
                    return Err(perr(format!("expected `qubits N` header, found `{}`", tokens[0])));
                }
                expect_args(&tokens, 1, line)?;
                let n: usize = parse_index(tokens[1], line)?;
                circuit = Some(Circuit::new(n).map_err(|_| perr("qubit count must be at least 1".into()))?);
                continue;
            };

            let inst = match tokens[0]
            {
                "qubits" => return Err(perr("duplicate `qubits` header".into())),
                "h" =>
                {
                    expect_args(&tokens, 1, line)?;
                    Instruction::H(parse_index(tokens[1], line)?)
                }
                "p" =>
                {
                    expect_args(&tokens, 2, line)?;
                    Instruction::P(parse_index(tokens[1], line)?, parse_phase(tokens[2], line)?)
                }
                "cp" =>
                {
                    expect_args(&tokens, 3, line)?;
                    Instruction::Cp(
                        parse_index(tokens[1], line)?,
                        parse_index(tokens[2], line)?,
                        parse_phase(tokens[3], line)?,
                    )
                }
                "cnot" =>
                {
                    expect_args(&tokens, 2, line)?;
                    Instruction::Cnot { control: parse_index(tokens[1], line)?, target: parse_index(tokens[2], line)? }
                }
                "swap" =>
                {
                    expect_args(&tokens, 2, line)?;
                    Instruction::Swap(parse_index(tokens[1], line)?, parse_index(tokens[2], line)?)
                }
                other => return Err(perr(format!("unknown instruction `{other}`"))),
            };
            c.push(inst)?;
        }
        circuit.ok_or(Error::Parse { line: 0, message: "missing `qubits N` header".into() })
    }
}

impl FromStr for Circuit
{
    type Err = Error;

    fn from_str(s: &str) -> Result<Self>
    {
        Circuit::parse(s)
    }
}

fn expect_args(tokens: &[&str], n: usize, line: usize) -> Result<()>
{
    if tokens.len() != n + 1
    {
        return Err(Error::Parse {
            line,
            message: format!("`{}` takes {n} argument(s), found {}", tokens[0], tokens.len() - 1),
        });
    }
    Ok(())
}

fn parse_index(tok: &str, line: usize) -> Result<usize>
{
    tok.parse().map_err(|_| Error::Parse { line, message: format!("invalid qubit index `{tok}`") })
}

fn parse_phase(tok: &str, line: usize) -> Result<f64>
{
    match tok.parse::<f64>()
    {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Parse { line, message: format!("invalid phase literal `{tok}`") }),
    }
}

#[cfg(test)]
mod tests
{
    use super::*;

    #[test]
    fn parses_all_instruction_forms()
    {
        let text = "# bell-ish\nqubits 3\nh 0\np 1 0.25   # trailing\ncp 0 1 3.5\n\ncnot 1 2\nswap 0 2\n";
        let c = Circuit::parse(text).unwrap();
        assert_eq!(c.num_qubits(), 3);
        assert_eq!(
            c.instructions(),
            &[
                Instruction::H(0),
                Instruction::P(1, 0.25),
                Instruction::Cp(0, 1, 3.5),
                Instruction::Cnot { control: 1, target: 2 },
                Instruction::Swap(0, 2),
            ]
        );
    }

    #[test]
    fn missing_argument_reports_line()
    {
        let err = Circuit::parse("qubits 2\nh 0\nh\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, message: "`h` takes 1 argument(s), found 0".into() });
        assert!(err.is_parse());
    }

    #[test]
    fn syntax_errors()
    {
        assert!(Circuit::parse("h 0\n").unwrap_err().is_parse());
        assert!(Circuit::parse("").unwrap_err().is_parse());
        assert!(Circuit::parse("qubits 0\n").unwrap_err().is_parse());
        assert!(Circuit::parse("qubits 2\nqubits 2\n").unwrap_err().is_parse());
        assert!(Circuit::parse("qubits 2\nx 0\n").unwrap_err().is_parse());
        assert!(Circuit::parse("qubits 2\np 0 abc\n").unwrap_err().is_parse());
        assert!(Circuit::parse("qubits 2\np 0 nan\n").unwrap_err().is_parse());
        assert!(Circuit::parse("qubits 2\nh -1\n").unwrap_err().is_parse());
    }

    #[test]
    fn semantic_errors_are_not_parse_errors()
    {
        let err = Circuit::parse("qubits 2\nh 0\nh 2\n").unwrap_err();
        assert!(!err.is_parse());
        assert!(matches!(err, Error::Instruction { position: 1, .. }));
        assert!(matches!(Circuit::parse("qubits 2\ncp 1 1 0.5\n"), Err(Error::Instruction { .. })));
    }

    #[test]
    fn text_round_trip_is_exact()
    {
        let mut c = Circuit::new(2).unwrap();
        c.push(Instruction::P(0, std::f64::consts::PI / 3.0)).unwrap();
        c.push(Instruction::Cp(1, 0, -0.1234567890123456)).unwrap();
        let back = Circuit::parse(&c.to_text().unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn inverse_reverses_and_negates()
    {
        let c = Circuit::parse("qubits 2\nh 0\np 1 0.5\ncp 0 1 1.0\n").unwrap();
        let inv = c.inverse();
        assert_eq!(
            inv.instructions(),
            &[Instruction::Cp(0, 1, -1.0), Instruction::P(1, -0.5), Instruction::H(0)]
        );
    }

    #[test]
    fn explicit_matrices_have_no_text_form()
    {
        let mut c = Circuit::new(1).unwrap();
        c.push(Instruction::U1(0, crate::linalg::identity(2))).unwrap();
        assert!(c.to_text().is_err());
        assert!(c.push(Instruction::U1(0, crate::linalg::identity(4))).is_err());
    }
}
