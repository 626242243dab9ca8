//! Published reference data: the order-14 diameter-4 catalogue, the
//! search-space counts, the bounds table and the `G+(2)` matrices.

/// The 27 (1,1)-regular mixed graphs of order 14 and diameter 4 in bare
/// digraph6. The first is the Cayley graph of the dihedral group of order 14.
pub const ORDER14_K4_DIGRAPH6: [&str; 27] = [
    "MW?H??GC@_?EAO??E?_O?B@_??L_??W?@_",
    "MW?H??K??_QC??o?I??oCC??oGH@?ACH??",
    "MW?H??K??_QC??o?@c?_CC??oE?I??EH??",
    "MW?H??K??_QC??o?B?A_CC??sC?AAACH??",
    "MW?H??K??_QC??o?BC?_CC??oCIA??K@_?",
    "MW?H??G@@_?E?OA?E?_O?B?oG?OCG?KE??",
    "MW?H??G@@_?E?OA?E?_O?B@_G?O?W?WE??",
    "MW?H??G@@_?E?OA?E?_O?B__?OO?W?WE??",
    "MW?H??G@@_?EAO??E?_O?B?__OO?W?WE??",
    "MW?H??G@@_?EAO??E?_O?B?_c?O?W?WAO?",
    "MW?H??G@@_?EAO??E?_O?B@_??W?W?WE??",
    "MW?H??G@@_?EAO??E?_O?B@_??X?G?WA@?",
    "MW?H??G@@_?EAO??E?_O?BO_??W?W?WAO?",
    "MW?H??G@@_?EAO??E?_O?BO_??WCG?WA@?",
    "MW?H??GC@_?E?OA?E?_O?B?o?OD_?_G?@_",
    "MW?H??GC@_?E?OA?E?_O?B@_?CD_?_G?@_",
    "MW?H??GC@_?E?OA?E?_O?B@_G?D_??W?@_",
    "MW?H??GC@_?E?OA?E?_O?B__?OD_??W?@_",
    "MW?H??GC@_?E?P??E?_O?B__??L_??K?O_",
    "MW?H??GC@_?EAO??E?_O?B?o??Kc??KC?_",
    "MW?H??K??OQG?@_?E?OO?B__C?O?IAG@@?",
    "MW?H??K??_Q@?@_?E?OO?BO_??WGG?WH??",
    "MW?H??K??_U??@_?E?OO?B?___O?W?WH??",
    "MW?H??K??_U??@_?E?OO?B?_g?O?W?W@_?",
    "MW?H??K??`A@?@_?E?OO?BO_??MO?AG?C_",
    "MW?H??GO@_?E?OO?B?_O?BW???MA?@G?C_",
    "MW?H??GC@_?E?OO?A__O?B_?OK?c?OG?@_",
];

/// `(k, N(k))` for the exhaustive almost-Moore search.
pub const SEARCH_SPACE: [(u32, u64); 3] = [(3, 396), (4, 889_980), (5, 0)];

/// One row of the bounds table for `(1,1,k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsRow {
    pub k: u32,
    pub lower: u64,
    pub upper: u64,
    pub moore: u64,
}

const fn row(k: u32, lower: u64, upper: u64, moore: u64) -> BoundsRow {
    BoundsRow { k, lower, upper, moore }
}

pub const BOUNDS_TABLE: [BoundsRow; 15] = [
    row(2, 6, 6, 6),
    row(3, 10, 10, 11),
    row(4, 14, 14, 19),
    row(5, 24, 26, 32),
    row(6, 34, 48, 53),
    row(7, 54, 78, 87),
    row(8, 72, 126, 142),
    row(9, 112, 206, 231),
    row(10, 144, 336, 375),
    row(11, 240, 544, 608),
    row(12, 336, 882, 985),
    row(13, 544, 1428, 1595),
    row(14, 800, 2312, 2582),
    row(15, 1024, 3744, 4179),
    row(16, 1600, 6058, 6763),
];

/// Vertex order of the printed `G+(2)` matrices.
pub const GPLUS2_LABELS: [&str; 8] = ["0|00", "1|00", "1|01", "0|01", "0|10", "1|10", "1|11", "0|11"];

pub const GPLUS2_A: [[u8; 8]; 8] = [
    [1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 1],
];

pub const GPLUS2_A4: [[u64; 8]; 8] = [
    [5, 3, 3, 1, 1, 1, 1, 1],
    [3, 3, 1, 3, 1, 1, 3, 1],
    [1, 1, 3, 1, 3, 3, 1, 3],
    [1, 1, 1, 5, 1, 3, 3, 1],
    [1, 3, 3, 1, 5, 1, 1, 1],
    [3, 1, 3, 3, 1, 3, 1, 1],
    [1, 3, 1, 1, 3, 1, 3, 3],
    [1, 1, 1, 1, 1, 3, 3, 5],
];

/// Size of each spectral class of the order-14 catalogue, by class id 1..6.
pub const SPECTRUM_CLASS_SIZES: [usize; 6] = [9, 6, 5, 4, 2, 1];
