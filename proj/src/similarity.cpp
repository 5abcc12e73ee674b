#include "iota/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace iota {

namespace {

Matrix conjugate(const Vector& d, const Matrix& m) {
    // diag(d) M diag(d)^-1
    Matrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = d[i] * m(i, j) / d[j];
    return out;
}

Matrix left_scale(const Vector& d, const Matrix& m) {
    Matrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = d[i] * m(i, j);
    return out;
}

double vector_dev(const Vector& got, const Vector& want) {
    const double denom = std::max(1.0, infinity_norm(want));
    return infinity_norm(subtract(got, want)) / denom;
}

double matrix_dev(const Matrix& got, const Matrix& want) {
    double dev = 0.0;
    for (std::size_t i = 0; i < got.rows(); ++i)
        for (std::size_t j = 0; j < got.cols(); ++j)
            dev = std::max(dev, std::fabs(got(i, j) - want(i, j)));
    return dev / std::max(1.0, want.max_abs());
}

} // namespace

GdpTable build_gdp_table(const Matrix& physical_flows, const Vector& quantities,
                         const Vector& prices, double tol) {
    const std::size_t n = quantities.size();
    if (!physical_flows.square() || physical_flows.rows() != n || prices.size() != n)
        throw DimensionMismatch("flow matrix and vectors must share one dimension");
    if (!physical_flows.all_nonnegative())
        throw NegativeEntry("physical flows must be nonnegative");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(quantities[i] > 0.0))
            throw NonPositive("quantities must be strictly positive");
        if (!(prices[i] > 0.0))
            throw NonPositive("prices must be strictly positive");
    }
    const Vector used = physical_flows.row_sums();
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(used[i] - quantities[i]) >
            tol * std::max(1.0, std::fabs(quantities[i])))
            throw NotInterindustrial(
                "commodity " + std::to_string(i) +
                " violates the interindustrial condition Se = q (gap " +
                std::to_string(used[i] - quantities[i]) + ")");

    GdpTable g;
    g.quantity = quantities;
    g.price = prices;
    g.object.assign(n, 1.0);
    g.value.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g.value[i] = prices[i] * quantities[i];

    g.quantity_flow = physical_flows;
    g.value_flow = left_scale(prices, physical_flows); // Z = p S
    Matrix d = physical_flows;                          // D = q^-1 S
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d(i, j) /= quantities[i];
    g.distribution = d;
    g.price_flow = left_scale(prices, d); // T = p D

    g.value_state = conjugate(g.value, d);
    g.price_state = conjugate(g.price, d);
    g.quantity_state = conjugate(g.quantity, d);
    return g;
}

VerificationReport verify_gdp_table(const GdpTable& g, double tol) {
    VerificationReport report;
    report.tol = tol;
    auto add = [&](const std::string& name, double dev) {
        report.relations.push_back({name, dev, dev <= tol});
    };

    // Row sums: Ze = x, Te = p, Se = q, De = e.
    add("row_sum_Z", vector_dev(g.value_flow.row_sums(), g.value));
    add("row_sum_T", vector_dev(g.price_flow.row_sums(), g.price));
    add("row_sum_S", vector_dev(g.quantity_flow.row_sums(), g.quantity));
    add("row_sum_D", vector_dev(g.distribution.row_sums(), g.object));

    // Perron eigenvector relations at eigenvalue 1.
    add("eigen_Ax", vector_dev(g.value_state.apply(g.value), g.value));
    add("eigen_Bp", vector_dev(g.price_state.apply(g.price), g.price));
    add("eigen_Cq", vector_dev(g.quantity_state.apply(g.quantity), g.quantity));
    add("eigen_De", vector_dev(g.distribution.apply(g.object), g.object));

    // Similarity identities against D.
    add("similarity_A", matrix_dev(g.value_state, conjugate(g.value, g.distribution)));
    add("similarity_B", matrix_dev(g.price_state, conjugate(g.price, g.distribution)));
    add("similarity_C", matrix_dev(g.quantity_state, conjugate(g.quantity, g.distribution)));

    // Spectral identity: the four state matrices share Frobenius eigenvalue 1.
    double spectral = 0.0;
    for (const Matrix* m : {&g.value_state, &g.price_state, &g.quantity_state,
                            &g.distribution}) {
        try {
            spectral = std::max(spectral, std::fabs(frobenius_eigen(*m).lambda - 1.0));
        } catch (const Error&) {
            spectral = std::numeric_limits<double>::infinity();
        }
    }
    add("spectral", spectral);

    report.all_pass = std::all_of(report.relations.begin(), report.relations.end(),
                                  [](const RelationCheck& r) { return r.pass; });
    return report;
}

Matrix monetary_physical_bridge(const Matrix& physical_tech, const Vector& prices) {
    if (!physical_tech.square() || physical_tech.rows() != prices.size())
        throw DimensionMismatch("price vector must match the technology matrix");
    for (double p : prices)
        if (!(p > 0.0))
            throw NonPositive("prices must be strictly positive");
    return conjugate(prices, physical_tech);
}

} // namespace iota
