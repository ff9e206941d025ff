//! Diagrams assembled from planar pieces.

use crate::diagram::planar::Planar;
use crate::diagram::{DiagramError, LinkDiagram};

/// A 3-strand tangle in the solid torus, closed up, together with the axis circle as
/// component 2. `clasp` is the sign of the clasp between the cap and the cup; `thread`
/// says whether the through-arc passes over (`1`) or under (`-1`) the first cup leg.
pub(crate) fn solid_torus_pattern(clasp: i8, thread: i8) -> Result<LinkDiagram, DiagramError> {
    let hooks = Planar::twist(2 * clasp as i64).rotate().beside(&Planar::identity(1));
    let through = Planar::braid(3, &[-2 * thread as i32, thread as i32])?;
    let pattern = hooks.stack(&through);
    let d = with_axis(&pattern)?;
    // The axis has no self-crossings; put it second.
    let d = if is_axis(&d, 0) { d.permute_components(&[1, 0]) } else { d };
    Ok(if d.lk() < 0 { d.reverse_components(&[1]) } else { d })
}

fn is_axis(d: &LinkDiagram, i: usize) -> bool {
    d.strand_components().iter().all(|&(u, o)| u != i || o != i)
}

/// Annular closure of `pattern` with its axis as a thin loop around the closing strands:
/// over all of them on the way out, under all of them on the way back. The pattern is
/// component 0 unless it has no crossings.
pub(crate) fn with_axis(pattern: &Planar) -> Result<LinkDiagram, DiagramError> {
    let n = pattern.top.len();
    let word: Vec<i32> = (2..=n as i32 + 1).chain((1..=n as i32).map(|i| -i)).collect();
    let axis = Planar::cup(n + 2, 0).stack(&Planar::braid(n + 2, &word)?).stack(&Planar::cap(n + 2, n));
    let closed = pattern.stack(&axis).strip_flags().close();
    let start = closed.xs.iter().flat_map(|x| x.e).min().unwrap();
    closed.orient_link(&[start])
}

/// The Whitehead pattern in the solid torus: a clasp of sign `clasp` between a hook
/// hanging from the top and one rising from the bottom, closed around the axis.
pub(crate) fn whitehead_pattern(clasp: i8) -> Result<LinkDiagram, DiagramError> {
    with_axis(&Planar::twist(2 * clasp as i64).rotate())
}
