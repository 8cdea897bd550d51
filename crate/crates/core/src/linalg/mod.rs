//! Matrices, antisymmetric tensors, determinants and (hyper)pfaffians over an
//! exact [`Ring`](crate::ring::Ring).

mod det;
mod index_set;
mod matrix;
mod pfaffian;
mod tensor;

pub use det::{
    det, det_bareiss, det_berezin, det_leibniz, det_with, inverse, inverse_entry_berezin,
    minor_det, pair_gaussian, signed_minor, signed_minor_berezin, DetBackend,
};
pub use index_set::IndexSet;
pub use matrix::SquareMatrix;
pub(crate) use pfaffian::ordered_tuple_form;
pub use pfaffian::{hyperpfaffian, hyperpfaffian_with, pfaffian, pfaffian_with, PfaffianBackend};
pub use tensor::{increasing_tuples, AntisymmetricTensor, TensorFamily};
