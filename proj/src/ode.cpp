#include "bfl/ode.hpp"

#include <algorithm>

namespace bfl {

namespace {

// Node, weight and error coefficients of the 12-stage 8(5,3) Dormand-Prince
// pair (Hairer-Norsett-Wanner coefficient set).
constexpr double c2 = 0.526001519587677318785587544488e-01;
constexpr double c3 = 0.789002279381515978178381316732e-01;
constexpr double c4 = 0.118350341907227396726757197510e+00;
constexpr double c5 = 0.281649658092772603273242802490e+00;
constexpr double c6 = 0.333333333333333333333333333333e+00;
constexpr double c7 = 0.25e+00;
constexpr double c8 = 0.307692307692307692307692307692e+00;
constexpr double c9 = 0.651282051282051282051282051282e+00;
constexpr double c10 = 0.6e+00;
constexpr double c11 = 0.857142857142857142857142857142e+00;

constexpr double a21 = 5.26001519587677318785587544488e-2;
constexpr double a31 = 1.97250569845378994544595329183e-2;
constexpr double a32 = 5.91751709536136983633785987549e-2;
constexpr double a41 = 2.95875854768068491816892993775e-2;
constexpr double a43 = 8.87627564304205475450678981324e-2;
constexpr double a51 = 2.41365134159266685502369798665e-1;
constexpr double a53 = -8.84549479328286085344864962717e-1;
constexpr double a54 = 9.24834003261792003115737966543e-1;
constexpr double a61 = 3.7037037037037037037037037037e-2;
constexpr double a64 = 1.70828608729473871279604482173e-1;
constexpr double a65 = 1.25467687566822425016691814123e-1;
constexpr double a71 = 3.7109375e-2;
constexpr double a74 = 1.70252211019544039314978060272e-1;
constexpr double a75 = 6.02165389804559606850219397283e-2;
constexpr double a76 = -1.7578125e-2;
constexpr double a81 = 3.70920001185047927108779319836e-2;
constexpr double a84 = 1.70383925712239993810214054705e-1;
constexpr double a85 = 1.07262030446373284651809199168e-1;
constexpr double a86 = -1.53194377486244017527936158236e-2;
constexpr double a87 = 8.27378916381402288758473766002e-3;
constexpr double a91 = 6.24110958716075717114429577812e-1;
constexpr double a94 = -3.36089262944694129406857109825e0;
constexpr double a95 = -8.68219346841726006818189891453e-1;
constexpr double a96 = 2.75920996994467083049415600797e1;
constexpr double a97 = 2.01540675504778934086186788979e1;
constexpr double a98 = -4.34898841810699588477366255144e1;
constexpr double a101 = 4.77662536438264365890433908527e-1;
constexpr double a104 = -2.48811461997166764192642586468e0;
constexpr double a105 = -5.90290826836842996371446475743e-1;
constexpr double a106 = 2.12300514481811942347288949897e1;
constexpr double a107 = 1.52792336328824235832596922938e1;
constexpr double a108 = -3.32882109689848629194453265587e1;
constexpr double a109 = -2.03312017085086261358222928593e-2;
constexpr double a111 = -9.3714243008598732571704021658e-1;
constexpr double a114 = 5.18637242884406370830023853209e0;
constexpr double a115 = 1.09143734899672957818500254654e0;
constexpr double a116 = -8.14978701074692612513997267357e0;
constexpr double a117 = -1.85200656599969598641566180701e1;
constexpr double a118 = 2.27394870993505042818970056734e1;
constexpr double a119 = 2.49360555267965238987089396762e0;
constexpr double a1110 = -3.0467644718982195003823669022e0;
constexpr double a121 = 2.27331014751653820792359768449e0;
constexpr double a124 = -1.05344954667372501984066689879e1;
constexpr double a125 = -2.00087205822486249909675718444e0;
constexpr double a126 = -1.79589318631187989172765950534e1;
constexpr double a127 = 2.79488845294199600508499808837e1;
constexpr double a128 = -2.85899827713502369474065508674e0;
constexpr double a129 = -8.87285693353062954433549289258e0;
constexpr double a1210 = 1.23605671757943030647266201528e1;
constexpr double a1211 = 6.43392746015763530355970484046e-1;

constexpr double b1 = 5.42937341165687622380535766363e-2;
constexpr double b6 = 4.45031289275240888144113950566e0;
constexpr double b7 = 1.89151789931450038304281599044e0;
constexpr double b8 = -5.8012039600105847814672114227e0;
constexpr double b9 = 3.1116436695781989440891606237e-1;
constexpr double b10 = -1.52160949662516078556178806805e-1;
constexpr double b11 = 2.01365400804030348374776537501e-1;
constexpr double b12 = 4.47106157277725905176885569043e-2;

constexpr double e31 = 0.244094488188976377952755905512e+00;
constexpr double e32 = 0.733846688281611857341361741547e+00;
constexpr double e33 = 0.220588235294117647058823529412e-01;

constexpr double e51 = 0.1312004499419488073250102996e-01;
constexpr double e56 = -0.1225156446376204440720569753e+01;
constexpr double e57 = -0.4957589496572501915214079952e+00;
constexpr double e58 = 0.1664377182454986536961530415e+01;
constexpr double e59 = -0.3503288487499736816886487290e+00;
constexpr double e510 = 0.3341791187130174790297318841e+00;
constexpr double e511 = 0.8192320648511571246570742613e-01;
constexpr double e512 = -0.2235530786388629525884427845e-01;

using V = std::array<double, 2>;

V add(const V& y, double h, std::initializer_list<std::pair<double, const V*>> terms) {
    V out = y;
    for (const auto& [coef, k] : terms) {
        out[0] += h * coef * (*k)[0];
        out[1] += h * coef * (*k)[1];
    }
    return out;
}

}  // namespace

OdeState integrate(const OdeRhs& rhs, OdeState y0, double t_final, const OdeOptions& opt) {
    if (t_final == 0.0) return y0;
    const double dir = t_final > 0.0 ? 1.0 : -1.0;

    auto f = [&](const V& y) -> V {
        const OdeState d = rhs({y[0], y[1]});
        return {d.s, d.w};
    };
    auto check_region = [&](const V& y, double t) {
        if (std::abs(y[1]) > opt.w_limit) throw OdeLeftRegion(t, y[1]);
    };

    V y{y0.s, y0.w};
    double t = 0.0;
    double h = std::min(opt.h_init, std::abs(t_final));
    double errold = 1e-4;
    check_region(y, 0.0);

    for (long step = 0; step < opt.max_steps; ++step) {
        if (dir * (t_final - t) <= 0.0) break;
        h = std::min(h, std::abs(t_final - t));
        const double hd = dir * h;

        const V k1 = f(y);
        const V k2 = f(add(y, hd, {{a21, &k1}}));
        const V k3 = f(add(y, hd, {{a31, &k1}, {a32, &k2}}));
        const V k4 = f(add(y, hd, {{a41, &k1}, {a43, &k3}}));
        const V k5 = f(add(y, hd, {{a51, &k1}, {a53, &k3}, {a54, &k4}}));
        const V k6 = f(add(y, hd, {{a61, &k1}, {a64, &k4}, {a65, &k5}}));
        const V k7 = f(add(y, hd, {{a71, &k1}, {a74, &k4}, {a75, &k5}, {a76, &k6}}));
        const V k8 = f(add(y, hd, {{a81, &k1}, {a84, &k4}, {a85, &k5}, {a86, &k6}, {a87, &k7}}));
        const V k9 = f(add(y, hd, {{a91, &k1}, {a94, &k4}, {a95, &k5}, {a96, &k6}, {a97, &k7}, {a98, &k8}}));
        const V k10 = f(add(y, hd, {{a101, &k1}, {a104, &k4}, {a105, &k5}, {a106, &k6}, {a107, &k7}, {a108, &k8}, {a109, &k9}}));
        const V k11 = f(add(y, hd, {{a111, &k1}, {a114, &k4}, {a115, &k5}, {a116, &k6}, {a117, &k7}, {a118, &k8}, {a119, &k9}, {a1110, &k10}}));
        const V k12 = f(add(y, hd, {{a121, &k1}, {a124, &k4}, {a125, &k5}, {a126, &k6}, {a127, &k7}, {a128, &k8}, {a129, &k9}, {a1210, &k10}, {a1211, &k11}}));

        V ksum;
        V ynew;
        for (int i = 0; i < 2; ++i) {
            ksum[i] = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] +
                      b10 * k10[i] + b11 * k11[i] + b12 * k12[i];
            ynew[i] = y[i] + hd * ksum[i];
        }

        // Combined 5th/3rd-order error estimate of the 853 pair.
        double err3 = 0.0, err5 = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double sci = opt.tol + opt.tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double e3i = ksum[i] - e31 * k1[i] - e32 * k9[i] - e33 * k12[i];
            const double e5i = e51 * k1[i] + e56 * k6[i] + e57 * k7[i] + e58 * k8[i] +
                               e59 * k9[i] + e510 * k10[i] + e511 * k11[i] + e512 * k12[i];
            err3 += (e3i / sci) * (e3i / sci);
            err5 += (e5i / sci) * (e5i / sci);
        }
        double denom = err5 + 0.01 * err3;
        if (denom <= 0.0) denom = 1.0;
        const double err = h * err5 * std::sqrt(1.0 / (2.0 * denom));

        constexpr double alpha = 0.125, safe = 0.9, min_scale = 0.333, max_scale = 6.0;
        if (err <= 1.0) {
            t += hd;
            y = ynew;
            check_region(y, t);
            double scale = (err == 0.0) ? max_scale
                                        : std::clamp(safe * std::pow(err, -alpha), min_scale, max_scale);
            h *= scale;
            errold = std::max(err, 1e-4);
            (void)errold;
        } else {
            h *= std::max(safe * std::pow(err, -alpha), min_scale);
            if (h < opt.h_min)
                throw std::runtime_error("integrate: step size underflow, local error refuses to drop");
        }
    }
    return {y[0], y[1]};
}

}  // namespace bfl
