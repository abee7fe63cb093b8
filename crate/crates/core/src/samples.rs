//! Three small sample orientations on four vertices.

use crate::graph::Orientation;

/// Acyclic orientation with arcs `1->2, 1->3, 2->4, 3->2`.
pub fn d1() -> Orientation {
    Orientation::new(4, [(1, 2), (1, 3), (2, 4), (3, 2)]).expect("valid orientation")
}

/// Orientation with arcs `2->1, 4->1, 1->3, 3->4, 3->2`.
pub fn d2() -> Orientation {
    Orientation::new(4, [(2, 1), (4, 1), (1, 3), (3, 4), (3, 2)]).expect("valid orientation")
}

/// Acyclic orientation of the 4-cycle with arcs `2->1, 3->2, 3->4, 4->1`.
pub fn d3() -> Orientation {
    Orientation::new(4, [(2, 1), (3, 2), (3, 4), (4, 1)]).expect("valid orientation")
}
