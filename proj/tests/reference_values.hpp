// Reference values computed with an independent high-precision oracle.
// Regenerate only together with the algorithm-level design notes.
#pragma once

namespace refvals {

struct DetRow { const char* name; double d_f, b_f, d_r, b_r; };
inline constexpr DetRow kDeterministicRows[] = {
    {"linear", 0.64584662949324168, 0.050727366589274347, 0.64584662949324168, 0.050727366589274236},
    {"exponential", 0.64584662949324168, 0.050727366589274347, 0.64584662949324168, 0.050727366589274236},
    {"step2", 0.64333163734431131, 0.046969995894863725, 0.64333163734431142, 0.046969995894863725},
    {"step4", 0.6382828093438796, 0.044195572410500095, 0.63828280934387971, 0.044195572410500317},
    {"step8", 0.6281017414674015, 0.041127911761668412, 0.6281017414674015, 0.041127911761668412},
    {"saw8", 0.034840683066307498, 0.033842108599745346, 0.034840683066307276, 0.033842108599745346},
    {"saw4", 0.015032765810428783, 0.026812212554533033, 0.015032765810428561, 0.026812212554533144},
    {"saw2", 0.0050249531391559632, 0.016194246272072665, 0.0050249531391559632, 0.016194246272072665},
    {"constant", 0, 0, 0, 0},
};

inline constexpr double kDecayN[] = {
    25, 50, 100, 200,
    400, 800};

inline constexpr double kDecayBaseline[] = {
    0.14591671903369441, 0.10257356290259412, 0.072012640954160045, 0.050727366589274347,
    0.035831615071148515, 0.025349854459291832};

inline constexpr double kDecaySlope = -0.50522934088112104;

inline constexpr double kProfileLinear20[] = {
    0, 0.052631578947368418, 0.10526315789473684, 0.15789473684210525,
    0.21052631578947367, 0.26315789473684209, 0.31578947368421051, 0.36842105263157893,
    0.42105263157894735, 0.47368421052631576, 0.52631578947368418, 0.57894736842105265,
    0.63157894736842102, 0.68421052631578949, 0.73684210526315785, 0.78947368421052633,
    0.84210526315789469, 0.89473684210526316, 0.94736842105263153, 1};

struct ECase { int b; double value; };
inline constexpr ECase kERatioLinear20[] = {
    {1, 0.050000000000000003},
    {2, 0.60724529055220922},
    {3, 0.72034959693844514},
    {5, 0.80979722365031914},
    {10, 0.89420835089249107},
    {15, 0.93912982403214273},
    {18, 0.96447283085555124},
    {19, 0.97395351544685482},
};

inline constexpr double kProfileRand45[] = {
    0.00052900796090371571, 0.028436437794036484, 0.17819574584441789, 0.22480616669468456,
    0.33950446024252301, 0.36954346451052245, 0.37424696288515236, 0.38205692686796899,
    0.38526793395322367, 0.39438547188989115, 0.4059819336708208, 0.4189709480129904,
    0.44335005515357029, 0.52051174075662776, 0.55227206148702801, 0.68087505520801028,
    0.76797912432039128, 0.84681034471951211, 0.86039005854966599, 0.88060380740308863,
    0.88278899803890698, 0.94447098942468721, 0.99481640072167599, 1.1044154798987582,
    1.1605190101097271, 1.2116940591419361, 1.2127726813301891, 1.2614288317478086,
    1.2829761418878598, 1.3121747034888076, 1.344118513053574, 1.3519643698434136,
    1.3978215704547001, 1.4196023808168503, 1.4234140683085441, 1.4475581283803107,
    1.522536888089502, 1.5622351776349419, 1.5693110959215133, 1.7077195970250667,
    1.8424014899189547, 1.9083140643610266, 1.9165328907316848, 1.9616214044489055,
    1.9854832554731858};

inline constexpr ECase kERatioRand45[] = {
    {1, 0.022222222222222223},
    {3, 0.70133992120683963},
    {5, 0.7911501139385041},
    {7, 0.83607541775099137},
    {11, 0.87781701043807381},
    {20, 0.9210665700334919},
    {30, 0.95092998818124452},
    {40, 0.97522875026768763},
    {42, 0.98113951508891817},
    {44, 0.98857747187141587},
};

inline constexpr double kProfileTied12[] = {
    0, 0, 1, 1.5,
    1.5, 1.5, 2, 3,
    3, 4, 4.25, 5};

inline constexpr ECase kERatioTied12[] = {
    {1, 0.083333333333333329},
    {2, 0.60276307627067782},
    {3, 0.71945832778641794},
    {4, 0.78125594494957429},
    {5, 0.82150891999192077},
    {6, 0.85134644411519167},
    {7, 0.87592039279053457},
    {8, 0.89694733471021326},
    {9, 0.91635574603258241},
    {10, 0.93457454107923998},
    {11, 0.9532169324760108},
};

inline constexpr double kMixtureBaselineLinear30_d1 = 0.13373128103773901;
inline constexpr double kMixtureBaselineLinear30_d2 = 0.28252413062013881;
inline constexpr double kMixtureBaselineLinear30_d3 = 0.44817175311945345;

inline constexpr double kDs1Y[] = {
    0.44364223696266714, 0.56849119192455644, 0.90810377496081962, 0.25424955349880196,
    0.58878127055484841, 0.35912332061031327, 0.75637361708265671, 0.54305886194443298,
    0.20208445782257867, 0.51610528530388711, 0.24205589164409225, 0.049571575016511438};

inline constexpr double kDs1X1[] = {
    0.11291842094080318, 0.34278811417961996, 0.015436335029296422, 0.77262231869265008,
    0.80364195633551605, 0.02059809225038467, 0.52617483635552276, 0.43197593039429427,
    0.4011394081519617, 0.071923381149803123, 0.94011196648720496, 0.29677757425767115};

inline constexpr double kDs1X2[] = {
    0.93223035992887759, 0.403531943834889, 0.20956186370584673, 0.2511168633248656,
    0.24754284677469984, 0.8048359821996709, 0.82925784738876285, 0.80837791079302945,
    0.266317653158886, 0.29578052770356267, 0.53769610687475544, 0.71184421632239547};

inline constexpr double kDs1_x1_sample_f = 0.016019904695671161;
inline constexpr double kDs1_x1_sample_r = 0.12625137445825274;
inline constexpr double kDs1_x1_full_f = 0.016019904695671161;
inline constexpr double kDs1_x1_full_r = 0.12625137445825274;
inline constexpr double kDs1_x2_sample_f = 0.042796758738436025;
inline constexpr double kDs1_x2_sample_r = 0.22796789141510165;
inline constexpr double kDs1_x2_full_f = 0.042796758738436025;
inline constexpr double kDs1_x2_full_r = 0.22796789141510165;
inline constexpr double kDs1_x1x2_sample_f = 0.0056566859405210446;
inline constexpr double kDs1_x1x2_sample_r = 0.47945317629108497;
inline constexpr double kDs1_x1x2_full_f = 0.019414858999182494;
inline constexpr double kDs1_x1x2_full_r = 0.35927986219753361;
inline constexpr double kDs1_x1_baseline_f = 0.22080255984222352;
inline constexpr double kDs1_x1_baseline_r = 0.21239571559682024;
inline constexpr double kDs1_x2_baseline_f = 0.22080255984222352;
inline constexpr double kDs1_x2_baseline_r = 0.21239571559682024;
inline constexpr double kDs1_x1x2_baseline_f = 0.42182571582016126;
inline constexpr double kDs1_x1x2_baseline_r = 0.40829563155978088;

inline constexpr double kDs2Y[] = {
    0, 0, 1, 1,
    2, 2, 3, 3,
    1, 2};

inline constexpr double kDs2X1[] = {
    0.5, 0.25, 0.5, 1,
    0.25, 1, 0.75, 0.5,
    0.5, 0.25};

inline constexpr double kDs2X2[] = {
    3, 1, 4, 1,
    5, 9, 2, 6,
    5, 3};

inline constexpr double kDs2_x1_sample_f = 0.1238509649396905;
inline constexpr double kDs2_x1_sample_r = 0.24271190828245826;
inline constexpr double kDs2_x1_full_f = 0.1238509649396905;
inline constexpr double kDs2_x1_full_r = 0.24271190828245826;
inline constexpr double kDs2_x2_sample_f = 0.28370037108126878;
inline constexpr double kDs2_x2_sample_r = 0.43230025560282781;
inline constexpr double kDs2_x2_full_f = 0.28370037108126878;
inline constexpr double kDs2_x2_full_r = 0.43230025560282781;
inline constexpr double kDs2_x1x2_sample_f = 0.47665383379528781;
inline constexpr double kDs2_x1x2_sample_r = 0.43708037608131378;
inline constexpr double kDs2_x1x2_full_f = 0.43083269764147114;
inline constexpr double kDs2_x1x2_full_r = 0.66254440144185678;
inline constexpr double kDs2_x1_baseline_f = 0.11340824937073923;
inline constexpr double kDs2_x1_baseline_r = 0.19973753328796096;
inline constexpr double kDs2_x2_baseline_f = 0.15936468226373623;
inline constexpr double kDs2_x2_baseline_r = 0.25139744889881299;

inline constexpr double kChainY[] = {
    0.97735361525478204, 0.32610018519805839, 0.13898402060517767, 0.15966722943623202,
    0.26496909169562866, 0.25530368544076742, 0.075753136105406238, 0.21571829302493106,
    0.36672381845315372, 0.75000955163636362};

inline constexpr double kChainX0[] = {
    1, 1, 0.33333333333333331, 0,
    1, 1, 0.66666666666666663, 0.33333333333333331,
    0.66666666666666663, 1};

inline constexpr double kChainX1[] = {
    0.0075820358300011659, 0.50237400923891862, 0.25470231155941614, 0.13230422472688463,
    0.71554447070634153, 0.78898336542396896, 0.84419443929517257, 0.043573880375599616,
    0.55375565802655791, 0.29732787470592081};

inline constexpr double kChainX2[] = {
    0.91284012715506224, 0.38384150986623977, 0.26319942011982644, 0.43505425765014971,
    0.24929155830096206, 0.29134348123857812, 0.39969810498658143, 0.86262717975550984,
    0.96092357166791231, 0.50196885471022545};

inline constexpr double kChainX3[] = {
    0.89575240660104505, 0.2205800233614349, 0.42249111913309056, 0.026318803574789551,
    0.7694582962213955, 0.60928521540329772, 0.25880639171769282, 0.67058927266172197,
    0.034604782079473595, 0.44258779536790449};

inline constexpr int kChainSub[] = {0};
inline constexpr int kChainSup[] = {0, 1};
inline constexpr double kChainScoreSub = 0.65923969223970968;
inline constexpr double kChainScoreSup = 0.43655884595853101;

}  // namespace refvals
