#![allow(dead_code)]

use chanest_core::likelihood::{log_likelihood, FadingVector, LikelihoodContext};
use chanest_core::signal::{
    dft_pilot, draw_channel, synthesize_observation, ChannelRealization, PilotSequence, QuantizedObservation,
    SystemParams,
};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub params: SystemParams,
    pub pilot: PilotSequence,
    pub channel: ChannelRealization,
    pub obs: QuantizedObservation,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn instance(rng: &mut ChaCha8Rng, m: usize, n: usize, l: usize, snr: f64) -> Instance {
    let params = SystemParams::new(m, n, l, 10f64.powf(1.35), snr).unwrap();
    let pilot = dft_pilot(n).unwrap();
    let channel = draw_channel(&params, rng);
    let obs = synthesize_observation(&params, &channel, &pilot, rng).unwrap();
    Instance { params, pilot, channel, obs }
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Best objective and argmax over the square grid `lo..=hi` in both coordinates.
pub fn grid_max(ctx: &LikelihoodContext, center: [f64; 2], half_width: f64, step: f64) -> (f64, FadingVector) {
    let count = (2.0 * half_width / step).round() as i64;
    let mut best = (f64::NEG_INFINITY, FadingVector::ZERO);
    for i in 0..=count {
        let re = center[0] - half_width + i as f64 * step;
        for j in 0..=count {
            let g = FadingVector::new(re, center[1] - half_width + j as f64 * step);
            let v = log_likelihood(ctx, g);
            if v > best.0 {
                best = (v, g);
            }
        }
    }
    best
}

/// Coarse exhaustive scan of `[-half, half]^2`, then a 1e-3 scan around the coarse winner.
pub fn grid_max_refined(ctx: &LikelihoodContext, half: f64) -> (f64, FadingVector) {
    let coarse = 0.02;
    let (_, g) = grid_max(ctx, [0.0, 0.0], half, coarse);
    grid_max(ctx, g.0, 3.0 * coarse, 1e-3)
}

/// `(z, log Phi(z))` at 50-digit working precision, rounded to f64.
#[allow(clippy::approx_constant)]
pub const LOG_PHI_TABLE: &[(f64, f64)] = &[
    (-40.0, -804.6084420137538),
    (-39.75, -794.6334302624119),
    (-39.5, -784.7208791043175),
    (-39.25, -774.870788040974),
    (-39.0, -765.0831565643775),
    (-38.75, -755.3579841567746),
    (-38.5, -745.695270290411),
    (-38.25, -736.0950144272731),
    (-38.0, -726.5572160188201),
    (-37.75, -717.0818745057087),
    (-37.5, -707.6689893175072),
    (-37.25, -698.3185598724016),
    (-37.0, -689.0305855768906),
    (-36.75, -679.8050658254713),
    (-36.5, -670.6420000003137),
    (-36.25, -661.5413874709243),
    (-36.0, -652.5032275937984),
    (-35.75, -643.5275197120598),
    (-35.5, -634.6142631550883),
    (-35.25, -625.7634572381352),
    (-35.0, -616.9751012619225),
    (-34.75, -608.2491945122312),
    (-34.5, -599.5857362594724),
    (-34.25, -590.984725758244),
    (-34.0, -582.4461622468717),
    (-33.75, -573.9700449469318),
    (-33.5, -565.556373062758),
    (-33.25, -557.2051457809292),
    (-33.0, -548.9163622697381),
    (-32.75, -540.6900216786399),
    (-32.5, -532.5261231376803),
    (-32.25, -524.4246657569015),
    (-32.0, -516.3856486257254),
    (-31.75, -508.4090708123126),
    (-31.5, -500.4949313628971),
    (-31.25, -492.64322930109375),
    (-31.0, -484.85396362717927),
    (-30.75, -477.1271333173437),
    (-30.5, -469.4627373229121),
    (-30.25, -461.86077456953467),
    (-30.0, -454.3212439563432),
    (-29.75, -446.84414435507347),
    (-29.5, -439.42947460915025),
    (-29.25, -432.0772335327345),
    (-29.0, -424.78741990973015),
    (-28.75, -417.560032492748),
    (-28.5, -410.3950700020256),
    (-28.25, -403.2925311243),
    (-28.0, -396.25241451163106),
    (-27.75, -389.2747187801727),
    (-27.5, -382.35944250888986),
    (-27.25, -375.50658423821693),
    (-27.0, -368.71614246865636),
    (-26.75, -361.9881156593121),
    (-26.5, -355.322502226356),
    (-26.25, -348.7193005414225),
    (-26.0, -342.17850892992783),
    (-25.75, -335.7001256693091),
    (-25.5, -329.28414898717955),
    (-25.25, -322.930577059394),
    (-25.0, -316.63940800802027),
    (-24.75, -310.4106398992099),
    (-24.5, -304.2442707409637),
    (-24.25, -298.1402984807839),
    (-24.0, -292.0987210032078),
    (-23.75, -286.1195361272146),
    (-23.5, -280.20274160349766),
    (-23.25, -274.3483351115943),
    (-23.0, -268.5563142568631),
    (-22.75, -262.8266765673004),
    (-22.5, -257.1594194901842),
    (-22.25, -251.55454038853486),
    (-22.0, -246.0120365373809),
    (-21.75, -240.53190511981586),
    (-21.5, -235.114143222833),
    (-21.25, -229.75874783292252),
    (-21.0, -224.46571583141449),
    (-20.75, -219.2350439895504),
    (-20.5, -214.0667289632638),
    (-20.25, -208.96076728764925),
    (-20.0, -203.91715537109727),
    (-19.75, -198.93588948907095),
    (-19.5, -194.0169657774975),
    (-19.25, -189.16038022574614),
    (-19.0, -184.36612866916096),
    (-18.75, -179.6342067811148),
    (-18.5, -174.9646100645466),
    (-18.25, -170.3573338429423),
    (-18.0, -165.8123732507142),
    (-17.75, -161.32972322293122),
    (-17.5, -156.9093784843464),
    (-17.25, -152.55133353766368),
    (-17.0, -148.2555826509804),
    (-16.75, -144.0221198443353),
    (-16.5, -139.8509388752852),
    (-16.25, -135.7420332234253),
    (-16.0, -131.6953960737597),
    (-15.75, -127.71102029881891),
    (-15.5, -123.78889843941037),
    (-15.25, -119.92902268387525),
    (-15.0, -116.1313848457117),
    (-14.75, -112.39597633940915),
    (-14.5, -108.72278815432047),
    (-14.25, -105.11181082637961),
    (-14.0, -101.56303440744996),
    (-13.75, -98.0764484320636),
    (-13.5, -94.6520418812829),
    (-13.25, -91.28980314338372),
    (-13.0, -87.98971997102252),
    (-12.75, -84.75177943450721),
    (-12.5, -81.57596787074388),
    (-12.25, -78.46227082737593),
    (-12.0, -75.4106730015688),
    (-11.75, -72.4211581728207),
    (-11.5, -69.49370912909535),
    (-11.25, -66.62830758547554),
    (-11.0, -63.82493409442372),
    (-10.75, -61.08356794660469),
    (-10.5, -58.404187061073245),
    (-10.25, -55.78676786345149),
    (-10.0, -53.23128515051247),
    (-9.75, -50.73771193934228),
    (-9.5, -48.30601929896523),
    (-9.25, -45.936176161977365),
    (-9.0, -43.628149113332114),
    (-8.75, -41.381902152945095),
    (-8.5, -39.19739642821767),
    (-8.25, -37.074589931901535),
    (-8.0, -35.01343715991455),
    (-7.75, -33.01388872274309),
    (-7.5, -31.075890902890002),
    (-7.25, -29.199385149405348),
    (-7.0, -27.384307498811076),
    (-6.75, -25.630587909629853),
    (-6.5, -23.938149495161838),
    (-6.25, -22.30690763600825),
    (-6.0, -20.736768949974707),
    (-5.75, -19.227630092220455),
    (-5.5, -17.77937635262526),
    (-5.25, -16.39188001003779),
    (-5.0, -15.064998393988725),
    (-4.75, -13.798571593147466),
    (-4.5, -12.59241973571308),
    (-4.25, -11.446339749365848),
    (-4.0, -10.360101486527292),
    (-3.75, -9.333443073489201),
    (-3.5, -8.366065308344092),
    (-3.25, -7.457624891374112),
    (-3.0, -6.607726221510349),
    (-2.75, -5.815911432945222),
    (-2.5, -5.08164827727869),
    (-2.25, -4.404315381153271),
    (-2.0, -3.783184333682032),
    (-1.75, -3.217397995800274),
    (-1.5, -2.7059444008238898),
    (-1.25, -2.247625677214318),
    (-1.0, -1.8410216450092636),
    (-0.75, -1.4844482299196562),
    (-0.5, -1.1759117615936185),
    (-0.25, -0.9130617648111351),
    (0.0, -0.6931471805599453),
    (0.25, -0.5129840754094305),
    (0.5, -0.3689464152886564),
    (0.75, -0.25699426683836524),
    (1.0, -0.17275377902344988),
    (1.25, -0.11165782847292517),
    (1.5, -0.06914345561223398),
    (1.75, -0.04088361815209493),
    (2.0, -0.02301290932896349),
    (2.25, -0.012299806091449409),
    (2.5, -0.006229025485860002),
    (2.75, -0.002984211568374192),
    (3.0, -0.0013508099647481938),
    (3.25, -0.0005771915854099501),
    (3.5, -0.00023265614137680455),
    (3.75, -8.842119423938442e-05),
    (4.0, -3.167174337748927e-05),
    (4.25, -1.068858289763308e-05),
    (4.5, -3.397678896834466e-06),
    (4.75, -1.017083759798215e-06),
    (5.0, -2.866516129637636e-07),
    (5.25, -7.604960805665851e-08),
    (5.5, -1.8989562646189464e-08),
    (5.75, -4.462172463857103e-09),
    (6.0, -9.865876455243758e-10),
    (6.25, -2.0522634254295282e-10),
    (6.5, -4.016000583939759e-11),
    (6.75, -7.392257778045144e-12),
    (7.0, -1.279812543886654e-12),
    (7.25, -2.0838581586722866e-13),
    (7.5, -3.190891672910947e-14),
    (7.75, -4.594627435778606e-15),
    (8.0, -6.220960574271786e-16),
    (8.25, -7.919726314642478e-17),
    (8.5, -9.479534822203318e-18),
    (8.75, -1.0667637375474858e-18),
    (9.0, -1.1285884059538405e-19),
    (9.25, -1.1224633591327982e-20),
    (9.5, -1.0494515075362608e-21),
    (9.75, -9.223413524939418e-23),
    (10.0, -7.619853024160525e-24),
    (10.25, -5.917176907365617e-25),
    (10.5, -4.3190063178092304e-26),
    (10.75, -2.9630808780943587e-27),
    (11.0, -1.9106595744986757e-28),
    (11.25, -1.1579603185686417e-29),
    (11.5, -6.595771446113675e-31),
    (11.75, -3.530942395885993e-32),
    (12.0, -1.776482112077679e-33),
    (12.25, -8.399796063633417e-35),
    (12.5, -3.732564298877713e-36),
    (12.75, -1.5587262888811991e-37),
    (13.0, -6.11716439954988e-39),
    (13.25, -2.256016339685789e-40),
    (13.5, -7.818807305657891e-42),
    (13.75, -2.546476315973957e-43),
    (14.0, -7.7935368191928e-45),
    (14.25, -2.24140623269364e-46),
    (14.5, -6.057494764415221e-48),
    (14.75, -1.538323546506845e-49),
    (15.0, -3.670966199312751e-51),
    (15.25, -8.231656290531415e-53),
    (15.5, -1.7344607917938702e-54),
    (15.75, -3.4340657492721406e-56),
    (16.0, -6.388754400538087e-58),
    (16.25, -1.1168221242476203e-59),
    (16.5, -1.834463003164731e-61),
    (16.75, -2.831314281544051e-63),
    (17.0, -4.1059962020989065e-65),
    (17.25, -5.594968394904885e-67),
    (17.5, -7.163458766235035e-69),
    (17.75, -8.617701309194813e-71),
    (18.0, -9.740948918937151e-73),
    (18.25, -1.03454636775701e-74),
    (18.5, -1.0323698689563289e-76),
    (18.75, -9.679551479134204e-79),
    (19.0, -8.527223952630977e-81),
    (19.25, -7.058146578583479e-83),
    (19.5, -5.48911547566041e-85),
    (19.75, -4.010891763113703e-87),
    (20.0, -2.7536241186062337e-89),
    (20.25, -1.77619986494957e-91),
    (20.5, -1.0764673258790961e-93),
    (20.75, -6.129572066947736e-96),
    (21.0, -3.279278018979036e-98),
    (21.25, -1.6483280423162502e-100),
    (21.5, -7.784397077182633e-103),
    (21.75, -3.4539884803573675e-105),
    (22.0, -1.439892435145079e-107),
    (22.25, -5.639637784324806e-110),
    (22.5, -2.0753107990663545e-112),
    (22.75, -7.17504567166903e-115),
    (23.0, -2.3306370062206488e-117),
    (23.25, -7.112658242358331e-120),
    (23.5, -2.0393675632499762e-122),
    (23.75, -5.493691846710365e-125),
    (24.0, -1.390392118549703e-127),
    (24.25, -3.3060813584979603e-130),
    (24.5, -7.385706861489408e-133),
    (24.75, -1.5501437289488298e-135),
    (25.0, -3.056696706382561e-138),
    (25.25, -5.662814628323675e-141),
    (25.5, -9.856236518963929e-144),
    (25.75, -1.6117135146044352e-146),
    (26.0, -2.4760633155033892e-149),
    (26.25, -3.5738147891654705e-152),
    (26.5, -4.8461626603033206e-155),
    (26.75, -6.173889533725388e-158),
    (27.0, -7.389481006885018e-161),
    (27.25, -8.309263799347425e-164),
    (27.5, -8.778170556878084e-167),
    (27.75, -8.712397652497471e-170),
    (28.0, -8.123869469659427e-173),
    (28.25, -7.116707883996568e-176),
    (28.5, -5.8571412538063374e-179),
    (28.75, -4.5287883538797326e-182),
    (29.0, -3.28978526670438e-185),
    (29.25, -2.2451311768291082e-188),
    (29.5, -1.4394745522291793e-191),
    (29.75, -8.670693523462394e-195),
    (30.0, -4.906713927148187e-198),
    (30.25, -2.6086402857412604e-201),
    (30.5, -1.3029379131780763e-204),
    (30.75, -6.113907079823262e-208),
    (31.0, -2.6952500812005002e-211),
    (31.25, -1.1162564144635826e-214),
    (31.5, -4.343232601031772e-218),
    (31.75, -1.5876179359245268e-221),
    (32.0, -5.452080603512396e-225),
    (32.25, -1.7589823748827652e-228),
    (32.5, -5.331424359678804e-232),
    (32.75, -1.5181237159499807e-235),
    (33.0, -4.061185620915855e-239),
    (33.25, -1.0206571898843918e-242),
    (33.5, -2.4098386951203854e-246),
    (33.75, -5.345356828623958e-250),
    (34.0, -1.1138987855743794e-253),
    (34.25, -2.1806939268660966e-257),
    (34.5, -4.010728966577262e-261),
    (34.75, -6.929967553740422e-265),
    (35.0, -1.1249107064724062e-268),
    (35.25, -1.715471648043787e-272),
    (35.5, -2.457691540661937e-276),
    (35.75, -3.3078761147810754e-280),
    (36.0, -4.182624065797283e-284),
    (36.25, -4.968506596540402e-288),
    (36.5, -5.544725713074845e-292),
    (36.75, -5.813144815533061e-296),
    (37.0, -5.725571222524577e-300),
    (37.25, -5.297888779927269e-304),
    (37.5, -4.605353009581955e-308),
    (37.75, -3.760960994665e-312),
    (38.0, -2.88542835e-316),
    (38.25, -2.0795e-320),
    (38.5, -0.0),
    (38.75, -0.0),
    (39.0, -0.0),
    (39.25, -0.0),
    (39.5, -0.0),
    (39.75, -0.0),
    (40.0, -0.0),
];
