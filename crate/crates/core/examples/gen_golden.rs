//! Regenerate the canonical golden s-expressions under `golden/v1/` from the
//! reference transcriptions in `superint_core::golden`.

use superint_core::{golden, golden_exotic, sexpr};

fn main() -> superint_core::Result<()> {
    let dir = golden::golden_dir();
    std::fs::create_dir_all(&dir)?;
    let mut entries = golden::all()?;
    entries.extend(golden_exotic::all()?);
    for (name, expr) in entries {
        let path = dir.join(format!("{name}.sexp"));
        std::fs::write(&path, sexpr::to_sexpr(&expr) + "\n")?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
