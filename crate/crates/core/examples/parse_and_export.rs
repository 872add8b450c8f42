//! Reads an edge list and an OFF mesh, then writes the canonical JSON
//! document and a 1-form file.

use cellform::io;
use cellform::random::{self, seeded};

const EDGES: &str = "# a square with a tail
a b
b c
c d
d a
d tail
";

const TRIANGLE: &str = "OFF
3 1 0
0 0 0
1 0 0
0 1 0
3 0 1 2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = io::parse_edge_list(EDGES)?;
    println!(
        "edge list: {:?} cells, names {:?}",
        g.complex.counts(),
        g.vertex_names
    );

    let off = io::parse_off(TRIANGLE)?;
    println!(
        "off: {:?} cells, boundary edges {:?}",
        off.complex.counts(),
        off.non_manifold_edges
    );

    let doc = io::ComplexDocument::from_complex(&off.complex, Some("triangle".into()));
    let text = io::to_canonical_json(&doc);
    let back = io::parse_complex_json(&text)?;
    println!(
        "json round trip keeps cells: {}",
        back.boundary_lists() == off.complex.boundary_lists()
    );

    let omega = random::one_form(&g.complex, &mut seeded(1));
    println!(
        "{}",
        serde_json::to_string_pretty(&io::one_form_to_json(&g.complex, &omega))?
    );
    Ok(())
}
