//! Export of a max-XORSAT system as a 0/1 program in CPLEX LP format.
//!
//! Variables `x1..xn` hold the assignment and `z1..zm` indicate satisfied
//! constraints. For target 1, `z_j = x_a XOR x_b` is linearized exactly by
//! `z <= xa + xb`, `z <= 2 - xa - xb`, `z >= xa - xb`, `z >= xb - xa`; for
//! target 0 the same holds for `1 - z_j`. The objective maximizes `sum z_j`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::encoding::XorsatInstance;
use crate::error::Result;

pub fn lp_text(x: &XorsatInstance) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        "\\ max-2-XORSAT: {} variables, {} constraints",
        x.n_vars(),
        x.m()
    );
    let _ = writeln!(w, "Maximize");
    if x.m() == 0 {
        let _ = writeln!(w, " obj: 0");
    } else {
        let terms: Vec<String> = (1..=x.m()).map(|j| format!("z{j}")).collect();
        let _ = writeln!(w, " obj: {}", terms.join(" + "));
    }
    let _ = writeln!(w, "Subject To");
    for (j, (&[a, b], &t)) in x.rows().iter().zip(x.targets()).enumerate() {
        let (z, xa, xb) = (
            format!("z{}", j + 1),
            format!("x{}", a + 1),
            format!("x{}", b + 1),
        );
        let c = j + 1;
        if t {
            let _ = writeln!(w, " c{c}_1: {z} - {xa} - {xb} <= 0");
            let _ = writeln!(w, " c{c}_2: {z} + {xa} + {xb} <= 2");
            let _ = writeln!(w, " c{c}_3: {z} - {xa} + {xb} >= 0");
            let _ = writeln!(w, " c{c}_4: {z} + {xa} - {xb} >= 0");
        } else {
            let _ = writeln!(w, " c{c}_1: {z} + {xa} + {xb} >= 1");
            let _ = writeln!(w, " c{c}_2: {z} - {xa} - {xb} >= -1");
            let _ = writeln!(w, " c{c}_3: {z} + {xa} - {xb} <= 1");
            let _ = writeln!(w, " c{c}_4: {z} - {xa} + {xb} <= 1");
        }
    }
    let _ = writeln!(w, "Binary");
    for i in 1..=x.n_vars() {
        let _ = writeln!(w, " x{i}");
    }
    for j in 1..=x.m() {
        let _ = writeln!(w, " z{j}");
    }
    let _ = writeln!(w, "End");
    out
}

pub fn export_lp(x: &XorsatInstance, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, lp_text(x))?;
    Ok(())
}
