use fourier_core::{BlockOperator, CMat, Complex64, ModeWindow};

/// The four blocks of an operator relative to `H = H+ (+) H-`, where `H+`
/// collects the modes `k >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    pub window: ModeWindow,
    pub plus_plus: CMat,
    pub plus_minus: CMat,
    pub minus_plus: CMat,
    pub minus_minus: CMat,
}

pub fn block_decompose(a: &BlockOperator) -> BlockDecomposition {
    let window = a.window();
    let m = a.matrix();
    let neg = window.negative_len();
    let pos = window.dim() - neg;
    BlockDecomposition {
        window,
        plus_plus: m.view((neg, neg), (pos, pos)).into_owned(),
        plus_minus: m.view((neg, 0), (pos, neg)).into_owned(),
        minus_plus: m.view((0, neg), (neg, pos)).into_owned(),
        minus_minus: m.view((0, 0), (neg, neg)).into_owned(),
    }
}

impl BlockDecomposition {
    pub fn from_blocks(
        window: ModeWindow,
        plus_plus: CMat,
        plus_minus: CMat,
        minus_plus: CMat,
        minus_minus: CMat,
    ) -> Self {
        Self {
            window,
            plus_plus,
            plus_minus,
            minus_plus,
            minus_minus,
        }
    }

    pub fn reassemble(&self) -> BlockOperator {
        let n = self.window.dim();
        let neg = self.window.negative_len();
        let pos = n - neg;
        let mut m = CMat::zeros(n, n);
        m.view_mut((neg, neg), (pos, pos))
            .copy_from(&self.plus_plus);
        m.view_mut((neg, 0), (pos, neg)).copy_from(&self.plus_minus);
        m.view_mut((0, neg), (neg, pos)).copy_from(&self.minus_plus);
        m.view_mut((0, 0), (neg, neg)).copy_from(&self.minus_minus);
        BlockOperator::new(self.window, m).expect("blocks sized from the window")
    }

    /// `2 [[0, A+-], [-A-+, 0]]`, which equals `[epsilon, A]`.
    pub fn epsilon_commutator(&self) -> BlockOperator {
        let two = Complex64::new(2.0, 0.0);
        let neg = self.window.negative_len();
        let pos = self.window.dim() - neg;
        Self {
            window: self.window,
            plus_plus: CMat::zeros(pos, pos),
            plus_minus: &self.plus_minus * two,
            minus_plus: &self.minus_plus * (-two),
            minus_minus: CMat::zeros(neg, neg),
        }
        .reassemble()
    }
}
