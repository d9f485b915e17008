//! Finite tree-graded graphs: canonical pieces, the two axioms, projections
//! and piece transforms.

use relhyp::treegraded::{canonical_pieces, check_t1, check_t2, glue_pieces, project_to_piece, PieceSpace, Selection};

fn main() -> relhyp::Result<()> {
    let text = include_str!("data/cactus.json");
    let value: serde_json::Value = serde_json::from_str(text).expect("valid json");
    let n = value["vertices"].as_u64().unwrap() as usize;
    let edges: Vec<(usize, usize, f64)> = serde_json::from_value(value["edges"].clone()).unwrap();

    let x = canonical_pieces(n, edges.clone())?;
    println!("canonical pieces: {:?}", x.pieces);
    println!("T1 holds: {}, T2 holds: {}", check_t1(&x).ok, check_t2(&x, 10_000).ok);

    for m in 0..x.pieces.len() {
        let p = project_to_piece(&x, 0, m)?;
        println!("  vertex 0 -> piece {m}: projects to {} at distance {}", p.vertex, p.distance);
    }

    // merge the pieces met by the path 0-1-2-3: the triangle and the bridge
    let glued = glue_pieces(&x, &Selection::Path(vec![0, 1, 2, 3]), 10_000)?;
    println!("after gluing along 0-1-2-3: {:?}", glued.pieces);

    // a single piece covering a cycle only partially breaks T2
    let bad = PieceSpace::new(n, edges, vec![vec![0, 1]]);
    match bad.map(|b| check_t2(&b, 10_000)) {
        Ok(t2) => println!("partial cover: T2 holds = {}, witness {:?}", t2.ok, t2.witness),
        Err(e) => println!("partial cover rejected: {e}"),
    }
    Ok(())
}
