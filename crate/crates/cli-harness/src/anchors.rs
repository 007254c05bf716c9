/// Check family and the statement it verifies. Every check id is `family` or
/// `family[params]`, so each id has exactly one anchor.
pub const ANCHORS: &[(&str, &str)] = &[
    (
        "schatten.mode_sum_law",
        "Schatten 2p-norm of [eps, M_g] against 2^{2p} sum |n| |g_n|^{2p}",
    ),
    (
        "schatten.column_law",
        "Basis-form Schatten sum of [eps, M_g] against its column closed form",
    ),
    (
        "schatten.divergence_witness",
        "Divergence of the H^q partial sums below q = 1/2",
    ),
    (
        "retraction.unitarity",
        "Unitarity of the up-retraction F(g)",
    ),
    (
        "retraction.decay_gain",
        "Off-diagonal decay exponent gained by the up-retraction",
    ),
    (
        "tameness.bounded_commutator",
        "Boundedness of [D^q, M_X] for smooth X",
    ),
    (
        "tameness.second_commutator_growth",
        "Growth of ad^2_{|D|^q}(M_X) psi with the window: non-tameness",
    ),
    (
        "dixmier.critical_average",
        "Dixmier partial averages at qp = 1",
    ),
    (
        "dixmier.subcritical_growth",
        "Growth of partial averages for qp < 1",
    ),
    (
        "dixmier.supercritical_decay",
        "Decay of partial averages for qp > 1",
    ),
    ("cocycle.antisymmetry", "Antisymmetry of c_p"),
    ("cocycle.closedness", "Cocycle condition delta c_p = 0"),
    (
        "cocycle.two_routes",
        "c_p from delta(tilde eta_p) against the closed trace form",
    ),
    (
        "cocycle.one_sided_vanishing",
        "Vanishing of c_p on pure-negative and pure-positive pairs",
    ),
    (
        "cocycle.recursion",
        "Recursion c^_{p+1} = c^_p - delta(eta^_p)",
    ),
    (
        "cocycle.window_independence",
        "Independence of c_p from the window under K -> K + 8",
    ),
    (
        "cocycle.second_order_grassmannian",
        "c2_F = c_0 + delta(eta_F)",
    ),
    (
        "cocycle.potential_kappa",
        "eta_p = L_X Phi on negative directions with kappa_p = -2^{2p+1}/(p+1)",
    ),
    (
        "audit.bracket_over_smooth",
        "Constant between (1/8) Tr(eps [dX, dY]) and (1/2) Tr(X dY)",
    ),
    (
        "audit.blocks_over_smooth",
        "Constant between the block form of c_0 and (1/2) Tr(X dY)",
    ),
    (
        "audit.closed_over_smooth",
        "Constant between the closed form c_0(B) and (1/2) Tr(X dY)",
    ),
    (
        "wzw.car",
        "Canonical anticommutation relations of the adjoint fermions",
    ),
    (
        "wzw.central_term",
        "Central term of the fermionic current algebra",
    ),
    ("wzw.square", "Q^2 = h on the safe subspace"),
    ("wzw.vacuum_energy", "Vacuum energy N/24"),
    (
        "wzw.equivariance",
        "Gauge equivariance [S_X, Q(A)] of the coupled supercharge",
    ),
    ("wzw.coupled_square", "Q(A)^2 = h(A)"),
    (
        "dressed.anticommutator_psi_psi",
        "Dressed table: {psi, psi}",
    ),
    (
        "dressed.bracket_s_s",
        "Dressed table: [S, S] with the bracket cocycle",
    ),
    ("dressed.bracket_s_psi", "Dressed table: [S, psi]"),
    ("dressed.anticommutator_psi_q", "Dressed table: {psi, Q}"),
    ("dressed.bracket_s_q", "Dressed table: [S, Q]"),
    ("dressed.bracket_psi_h", "Dressed table: [psi, h]"),
    ("dressed.bracket_h_s", "Dressed table: [h, S]"),
    ("dressed.bracket_s_f", "Dressed table: [S, f]"),
    ("dressed.bracket_q_f", "Dressed table: [Q, f]"),
    ("dressed.bracket_h_f", "Dressed table: [h, f]"),
    ("dressed.square_q_h", "Dressed table: Q^2 = h"),
    ("dressed.bracket_q_h", "Dressed table: [Q, h] = 0"),
    ("dressed.table", "Dressed bracket table"),
    (
        "dressed.vacuum",
        "Dressed vacuum exp(-Phi) annihilated by negative-mode currents",
    ),
    ("dressed.zero_b_table", "Undressed table at B = 0"),
    (
        "dressed.zero_b_smooth_constant",
        "Undressed cocycle at B = 0 against the smooth cocycle",
    ),
    ("dressed.zero_b_dressed_cocycle", "Dressed cocycle at B = 0"),
];

/// Anchor of a check family; families are compile-time constants, so a miss is a bug.
pub fn anchor(family: &str) -> &'static str {
    ANCHORS
        .iter()
        .find(|(f, _)| *f == family)
        .map(|(_, a)| *a)
        .unwrap_or_else(|| panic!("check family `{family}` has no anchor"))
}
