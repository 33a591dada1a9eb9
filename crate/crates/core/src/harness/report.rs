use std::fmt::Write as _;

use crate::analysis::{is_articulate, nonarticulate_modules};
use crate::lattice::{Configuration, LatticeError};

/// Stable `key: value` report used by the `analyze` command.
pub fn analyze_report(config: &Configuration) -> Result<String, LatticeError> {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "n: {}", config.len()).ok();
    writeln!(w, "d: {}", config.dim()).ok();
    let connected = config.is_connected();
    writeln!(w, "connected: {connected}").ok();
    let boundary = config.outer_boundary()?;
    writeln!(w, "boundary_modules: {}", boundary.modules.len()).ok();
    writeln!(w, "boundary_faces: {}", boundary.faces.len()).ok();
    writeln!(w, "holes: {}", boundary.holes().len()).ok();
    if connected {
        let articulate: Vec<String> = config
            .cells()
            .filter(|c| is_articulate(config, c).expect("member"))
            .map(|c| c.to_string())
            .collect();
        writeln!(w, "articulation_modules: {}", articulate.len()).ok();
        writeln!(w, "articulation: {}", articulate.join(" ")).ok();
        writeln!(w, "nonarticulate: {}", nonarticulate_modules(config).len()).ok();
    }
    Ok(out)
}
