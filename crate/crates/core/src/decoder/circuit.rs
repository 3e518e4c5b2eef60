//! Reversible circuit for the greedy decoder.
//!
//! Three registers: the syndrome (one wire per vertex), the path register
//! (one wire per path-list entry) and the error register (one wire per
//! edge). For every path `p(v1, v2)` in list order the circuit applies
//! `CCX(v1, v2, p)`, then `CX(p, e)` for each edge of the path, then
//! `CX(p, v1)` and `CX(p, v2)`. A final pass applies `CX(p, v1)`,
//! `CX(p, v2)` once more per path to restore the syndrome. The path
//! register is left holding garbage.

use std::fmt::{self, Write as _};

use super::graph::ConstraintGraph;
use super::paths::PathList;
use crate::bits::Bits;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wire {
    Syndrome(usize),
    Path(usize),
    Error(usize),
}

impl fmt::Display for Wire {
    /// `v:<i>`, `p:<k>` or `e:<j>`, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Wire::Syndrome(i) => write!(f, "v:{}", i + 1),
            Wire::Path(k) => write!(f, "p:{}", k + 1),
            Wire::Error(j) => write!(f, "e:{}", j + 1),
        }
    }
}

impl Wire {
    fn parse(token: &str, line: usize) -> Result<Wire> {
        let bad = || Error::MalformedCircuit(format!("line {line}: bad wire `{token}`"));
        let (reg, idx) = token.split_once(':').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match reg {
            "v" => Ok(Wire::Syndrome(idx - 1)),
            "p" => Ok(Wire::Path(idx - 1)),
            "e" => Ok(Wire::Error(idx - 1)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Cx { control: Wire, target: Wire },
    Ccx { controls: [Wire; 2], target: Wire },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateList {
    pub syndrome_len: usize,
    pub path_len: usize,
    pub error_len: usize,
    pub gates: Vec<Gate>,
}

impl GateList {
    pub fn ccx_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Ccx { .. }))
            .count()
    }

    pub fn cx_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cx { .. }))
            .count()
    }

    /// CX gates that act on the error register.
    pub fn error_cx_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| {
                matches!(
                    g,
                    Gate::Cx {
                        target: Wire::Error(_),
                        ..
                    }
                )
            })
            .count()
    }

    /// The line-oriented text format, terminated by a newline.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "REGISTERS syndrome={} path={} error={}\n",
            self.syndrome_len, self.path_len, self.error_len
        );
        for g in &self.gates {
            match g {
                Gate::Cx { control, target } => writeln!(out, "CX {control} {target}"),
                Gate::Ccx {
                    controls: [a, b],
                    target,
                } => writeln!(out, "CCX {a} {b} {target}"),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<GateList> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::MalformedCircuit("empty circuit file".into()))?;
        let mut sizes = [None; 3];
        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("REGISTERS") {
            return Err(Error::MalformedCircuit("missing REGISTERS header".into()));
        }
        for tok in tokens {
            let (name, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::MalformedCircuit(format!("bad register size `{tok}`")))?;
            let slot = match name {
                "syndrome" => 0,
                "path" => 1,
                "error" => 2,
                _ => {
                    return Err(Error::MalformedCircuit(format!(
                        "unknown register `{name}`"
                    )))
                }
            };
            sizes[slot] = Some(
                value
                    .parse::<usize>()
                    .map_err(|_| Error::MalformedCircuit(format!("bad register size `{tok}`")))?,
            );
        }
        let [Some(syndrome_len), Some(path_len), Some(error_len)] = sizes else {
            return Err(Error::MalformedCircuit(
                "header must size all three registers".into(),
            ));
        };
        let mut gates = Vec::new();
        for (i, line) in lines {
            let line_no = i + 1;
            let tok: Vec<&str> = line.split_whitespace().collect();
            let gate = match tok.as_slice() {
                ["CX", c, t] => Gate::Cx {
                    control: Wire::parse(c, line_no)?,
                    target: Wire::parse(t, line_no)?,
                },
                ["CCX", a, b, t] => Gate::Ccx {
                    controls: [Wire::parse(a, line_no)?, Wire::parse(b, line_no)?],
                    target: Wire::parse(t, line_no)?,
                },
                _ => {
                    return Err(Error::MalformedCircuit(format!(
                        "line {line_no}: unrecognised gate `{line}`"
                    )))
                }
            };
            gates.push(gate);
        }
        Ok(GateList {
            syndrome_len,
            path_len,
            error_len,
            gates,
        })
    }
}

pub fn emit_circuit(p: &PathList, g: &ConstraintGraph) -> GateList {
    let mut gates = Vec::new();
    for (k, path) in p.entries().iter().enumerate() {
        let (v1, v2, pw) = (
            Wire::Syndrome(path.u),
            Wire::Syndrome(path.v),
            Wire::Path(k),
        );
        gates.push(Gate::Ccx {
            controls: [v1, v2],
            target: pw,
        });
        for &e in &path.edges {
            gates.push(Gate::Cx {
                control: pw,
                target: Wire::Error(e),
            });
        }
        gates.push(Gate::Cx {
            control: pw,
            target: v1,
        });
        gates.push(Gate::Cx {
            control: pw,
            target: v2,
        });
    }
    for (k, path) in p.entries().iter().enumerate() {
        let pw = Wire::Path(k);
        gates.push(Gate::Cx {
            control: pw,
            target: Wire::Syndrome(path.u),
        });
        gates.push(Gate::Cx {
            control: pw,
            target: Wire::Syndrome(path.v),
        });
    }
    GateList {
        syndrome_len: g.n_vertices(),
        path_len: p.len(),
        error_len: g.n_edges(),
        gates,
    }
}

/// Final register contents of a classical basis-state simulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitState {
    pub syndrome: Bits,
    pub path: Bits,
    pub error: Bits,
}

impl CircuitState {
    fn check(&self, w: Wire) -> Result<()> {
        let (idx, len, reg) = match w {
            Wire::Syndrome(i) => (i, self.syndrome.len(), "syndrome"),
            Wire::Path(i) => (i, self.path.len(), "path"),
            Wire::Error(i) => (i, self.error.len(), "error"),
        };
        if idx >= len {
            return Err(Error::MalformedCircuit(format!(
                "wire {w} outside the {reg} register of size {len}"
            )));
        }
        Ok(())
    }

    fn get(&self, w: Wire) -> bool {
        match w {
            Wire::Syndrome(i) => self.syndrome.get(i),
            Wire::Path(i) => self.path.get(i),
            Wire::Error(i) => self.error.get(i),
        }
    }

    fn flip(&mut self, w: Wire) {
        match w {
            Wire::Syndrome(i) => self.syndrome.flip(i),
            Wire::Path(i) => self.path.flip(i),
            Wire::Error(i) => self.error.flip(i),
        }
    }
}

/// Runs the gate list on classical bits; the path register starts at zero.
pub fn simulate_circuit(gl: &GateList, y: &Bits, s: &Bits) -> Result<CircuitState> {
    if y.len() != gl.error_len || s.len() != gl.syndrome_len {
        return Err(Error::InvalidArgument(format!(
            "register sizes ({}, {}) do not match the circuit ({}, {})",
            s.len(),
            y.len(),
            gl.syndrome_len,
            gl.error_len
        )));
    }
    let mut st = CircuitState {
        syndrome: s.clone(),
        path: Bits::zeros(gl.path_len),
        error: y.clone(),
    };
    for g in &gl.gates {
        match *g {
            Gate::Cx { control, target } => {
                st.check(control)?;
                st.check(target)?;
                if control == target {
                    return Err(Error::MalformedCircuit(format!(
                        "CX on a single wire {control}"
                    )));
                }
                if st.get(control) {
                    st.flip(target);
                }
            }
            Gate::Ccx {
                controls: [a, b],
                target,
            } => {
                for w in [a, b, target] {
                    st.check(w)?;
                }
                if a == b || a == target || b == target {
                    return Err(Error::MalformedCircuit(format!(
                        "CCX wires {a} {b} {target} are not distinct"
                    )));
                }
                if st.get(a) && st.get(b) {
                    st.flip(target);
                }
            }
        }
    }
    Ok(st)
}

/// Gate counts of the greedy decoding circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GateCost {
    /// Path-controlled CX gates on the error register: the sum of all path
    /// lengths, i.e. of all pairwise graph distances.
    pub leading_order: u64,
    pub ccx: u64,
    pub cx: u64,
}

impl GateCost {
    pub fn total_gates(&self) -> u64 {
        self.ccx + self.cx
    }
}

pub fn gate_cost(p: &PathList) -> GateCost {
    let leading_order: u64 = p.entries().iter().map(|e| e.len() as u64).sum();
    let paths = p.len() as u64;
    GateCost {
        leading_order,
        ccx: paths,
        cx: leading_order + 4 * paths,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::tests::ex1_reduced;
    use crate::decoder::{greedy_decode, DecodingContext};
    use crate::encoding::{syndrome, XorsatInstance};

    #[test]
    fn worked_example_counts() {
        let ctx = DecodingContext::new(ex1_reduced()).unwrap();
        let gl = emit_circuit(&ctx.paths, &ctx.graph);
        assert_eq!(gl.ccx_count(), 6);
        assert_eq!(gl.error_cx_count(), 8);
        assert_eq!(gl.cx_count(), 32);
        let cost = gate_cost(&ctx.paths);
        assert_eq!(
            cost,
            GateCost {
                leading_order: 8,
                ccx: 6,
                cx: 32
            }
        );
    }

    #[test]
    fn single_edge_gate_sequence() {
        let x = XorsatInstance::new(2, vec![[0, 1]], vec![false]).unwrap();
        let ctx = DecodingContext::new(x).unwrap();
        let gl = emit_circuit(&ctx.paths, &ctx.graph);
        assert_eq!(
            gl.to_text(),
            "REGISTERS syndrome=2 path=1 error=1\n\
             CCX v:1 v:2 p:1\n\
             CX p:1 e:1\n\
             CX p:1 v:1\n\
             CX p:1 v:2\n\
             CX p:1 v:1\n\
             CX p:1 v:2\n"
        );
        assert_eq!(gate_cost(&ctx.paths).leading_order, 1);
    }

    #[test]
    fn path_graph_cost() {
        let x = XorsatInstance::new(3, vec![[0, 1], [1, 2]], vec![false; 2]).unwrap();
        let ctx = DecodingContext::new(x).unwrap();
        assert_eq!(gate_cost(&ctx.paths).leading_order, 4);
    }

    #[test]
    fn empty_path_list_gives_empty_circuit() {
        let x = XorsatInstance::new(0, vec![], vec![]).unwrap();
        let ctx = DecodingContext::new(x).unwrap();
        assert!(emit_circuit(&ctx.paths, &ctx.graph).gates.is_empty());
    }

    #[test]
    fn simulation_matches_greedy_on_worked_example() {
        let ctx = DecodingContext::new(ex1_reduced()).unwrap();
        let gl = emit_circuit(&ctx.paths, &ctx.graph);

        let zero = simulate_circuit(&gl, &Bits::zeros(5), &Bits::zeros(4)).unwrap();
        assert!(zero.error.is_zero() && zero.path.is_zero() && zero.syndrome.is_zero());

        let y = Bits::from_u8s(&[1, 0, 0, 0, 0]);
        let s = syndrome(&ctx.instance, &y).unwrap();
        let st = simulate_circuit(&gl, &y, &s).unwrap();
        assert!(st.error.is_zero());
        assert_eq!(st.syndrome.to_u8s(), vec![1, 1, 0, 0]);
        assert_eq!(st.path.ones().collect::<Vec<_>>(), vec![0]);

        let y = Bits::from_u8s(&[0, 0, 0, 0, 1]);
        let s = syndrome(&ctx.instance, &y).unwrap();
        let st = simulate_circuit(&gl, &y, &s).unwrap();
        assert_eq!(st.error.to_u8s(), vec![0, 1, 0, 0, 1]);
        assert_eq!(
            st.error,
            greedy_decode(&ctx.paths, &ctx.instance, &y)
                .unwrap()
                .residual
        );
        assert_eq!(st.syndrome, s);
    }

    #[test]
    fn text_round_trip_and_malformed_input() {
        let ctx = DecodingContext::new(ex1_reduced()).unwrap();
        let gl = emit_circuit(&ctx.paths, &ctx.graph);
        assert_eq!(GateList::from_text(&gl.to_text()).unwrap(), gl);
        assert!(GateList::from_text("CX p:1 e:1\n").is_err());
        assert!(GateList::from_text("REGISTERS syndrome=1 path=1 error=1\nCX p:0 e:1\n").is_err());
        assert!(
            GateList::from_text("REGISTERS syndrome=1 path=1 error=1\nSWAP p:1 e:1\n").is_err()
        );
    }

    #[test]
    fn out_of_range_wire_is_reported() {
        let gl = GateList::from_text("REGISTERS syndrome=1 path=1 error=1\nCX p:1 e:2\n").unwrap();
        let err = simulate_circuit(&gl, &Bits::zeros(1), &Bits::zeros(1)).unwrap_err();
        assert!(matches!(err, Error::MalformedCircuit(_)));
    }
}
