pub mod evaluate;
pub mod extract;
pub mod gen_pairs;
pub mod leaderboard;
pub mod questions;
pub mod validate;

use std::path::Path;

use crate::errors::{input_io, CliResult};

/// Writes `text` to `path` or, when no path is given, to stdout.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            input_io(std::fs::write(path, text), || {
                format!("writing {}", path.display())
            })?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}
