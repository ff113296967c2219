// generated by ml_oracle.py: (alpha, beta, z_re, z_im, e_re, e_im)
#[rustfmt::skip]
pub const ML_TABLE: &[(f64, f64, f64, f64, f64, f64)] = &[
    (0.3, 1.0, -0.5, 0.0, 0.6326490059435991, 0.0),
    (0.3, 1.0, 0.0, 0.5, 0.768775494900599, 0.4475234400900927),
    (0.3, 1.0, -3.0, 0.0, 0.21180263319643577, 0.0),
    (0.3, 1.0, 0.0, 3.0, 0.051918367383206696, 0.25171686755542566),
    (0.3, 1.0, -9.5, 0.0, 0.07623797625466087, 0.0),
    (0.3, 1.0, 0.0, 9.5, 0.005016130247306215, 0.0809667075118145),
    (0.3, 1.0, -10.5, 0.0, 0.06938357758325818, 0.0),
    (0.3, 1.0, 0.0, 10.5, 0.004103108794946154, 0.07327680852667579),
    (0.3, 2.0, -0.5, 0.0, 0.696763977597299, 0.0),
    (0.3, 2.0, 0.0, 0.5, 0.8479328392529554, 0.3685211776050943),
    (0.3, 2.0, -3.0, 0.0, 0.2719572978034493, 0.0),
    (0.3, 2.0, 0.0, 3.0, 0.11496364071909862, 0.330269294509904),
    (0.3, 2.0, -9.5, 0.0, 0.10448641518184122, 0.0),
    (0.3, 2.0, 0.0, 9.5, 0.012383050402230639, 0.11462840520964898),
    (0.3, 2.0, -10.5, 0.0, 0.09543286741748558, 0.0),
    (0.3, 2.0, 0.0, 10.5, 0.01015227035769183, 0.10391045402505532),
    (0.5, 1.0, -0.5, 0.0, 0.6156903441929259, 0.0),
    (0.5, 1.0, 0.0, 0.5, 0.7788007830714049, 0.47892517290104347),
    (0.5, 1.0, -3.0, 0.0, 0.17900115118138996, 0.0),
    (0.5, 1.0, 0.0, 3.0, 0.00012340980408667956, 0.2011573170376004),
    (0.5, 1.0, -9.5, 0.0, 0.05906467835256389, 0.0),
    (0.5, 1.0, 0.0, 9.5, 6.38150344806282e-40, 0.059723024865877966),
    (0.5, 1.0, -10.5, 0.0, 0.05349189974656412, 0.0),
    (0.5, 1.0, 0.0, 10.5, 1.3152163767853844e-48, 0.053979418476564366),
    (0.5, 1.0, -25.0, 0.0, 0.02254957243264136, 0.0),
    (0.5, 1.0, 0.0, 25.0, 3.9712057263600286e-53, 0.022585680912640474),
    (0.5, 1.0, -50.0, 0.0, 0.011281536265323773, 0.0),
    (0.5, 1.0, 0.0, 50.0, -3.119528795977444e-53, 0.011286049784700271),
    (0.5, 2.0, -0.5, 0.0, 0.7195197109627286, 0.0),
    (0.5, 2.0, 0.0, 0.5, 0.8847968677143805, 0.3410576425868513),
    (0.5, 2.0, -3.0, 0.0, 0.28490429471865863, 0.0),
    (0.5, 2.0, 0.0, 3.0, 0.11109739891065704, 0.3537755760276597),
    (0.5, 2.0, -9.5, 0.0, 0.10835087829096879, 0.0),
    (0.5, 2.0, 0.0, 9.5, 0.0110803324099723, 0.11811500346306361),
    (0.5, 2.0, -10.5, 0.0, 0.09887957509523307, 0.0),
    (0.5, 2.0, 0.0, 10.5, 0.009070294784580499, 0.10697507334264234),
    (0.5, 2.0, -25.0, 0.0, 0.04357124599971273, 0.0),
    (0.5, 2.0, 0.0, 25.0, 0.0016, 0.045099029594360275),
    (0.5, 2.0, -50.0, 0.0, 0.02217209595641638, 0.0),
    (0.5, 2.0, 0.0, 50.0, 0.0004, 0.02256306892199637),
    (0.75, 1.0, -0.5, 0.0, 0.6037903450952468, 0.0),
    (0.75, 1.0, 0.0, 0.5, 0.822060315575039, 0.49684119635928203),
    (0.75, 1.0, -3.0, 0.0, 0.12585513691184153, 0.0),
    (0.75, 1.0, 0.0, 3.0, -0.15465348189175915, -0.005719910155230623),
    (0.75, 1.0, -9.5, 0.0, 0.03243760904097, 0.0),
    (0.75, 1.0, 0.0, 9.5, -0.003112478057114249, 0.028667784340369658),
    (0.75, 1.0, -10.5, 0.0, 0.029036115595563152, 0.0),
    (0.75, 1.0, 0.0, 10.5, -0.0025493567382399163, 0.02605252644434925),
    (0.75, 1.0, -25.0, 0.0, 0.0115001807871696, 0.0),
    (0.75, 1.0, 0.0, 25.0, -0.0004513365076581193, 0.011016204917363201),
    (0.75, 1.0, -50.0, 0.0, 0.0056311878629451305, 0.0),
    (0.75, 1.0, 0.0, 50.0, -0.00011283767975602492, 0.005514269958781858),
    (0.75, 2.0, -0.5, 0.0, 0.7515178673030204, 0.0),
    (0.75, 2.0, 0.0, 0.5, 0.9273253806982366, 0.29617840536736817),
    (0.75, 2.0, -3.0, 0.0, 0.30009861325966475, 0.0),
    (0.75, 2.0, 0.0, 3.0, 0.05882588020930369, 0.41127305681780235),
    (0.75, 2.0, -9.5, 0.0, 0.10964989114334824, 0.0),
    (0.75, 2.0, 0.0, 9.5, 0.006247350296633077, 0.11637629404908488),
    (0.75, 2.0, -10.5, 0.0, 0.09978277445320843, 0.0),
    (0.75, 2.0, 0.0, 10.5, 0.005116884513072672, 0.10525105500551167),
    (0.75, 2.0, -25.0, 0.0, 0.043214787638547573, 0.0),
    (0.75, 2.0, 0.0, 25.0, 0.0009026990016602727, 0.04414359959541938),
    (0.75, 2.0, -50.0, 0.0, 0.021837946323624853, 0.0),
    (0.75, 2.0, 0.0, 50.0, 0.00022567576571729079, 0.022066886280324757),
    (0.9, 1.0, -0.5, 0.0, 0.603405498695861, 0.0),
    (0.9, 1.0, 0.0, 0.5, 0.8554853269063468, 0.4904966528417247),
    (0.9, 1.0, -3.0, 0.0, 0.08388835403377326, 0.0),
    (0.9, 1.0, 0.0, 3.0, -0.6175809349533969, -0.09355857391540587),
    (0.9, 1.0, -9.5, 0.0, 0.013671573485561776, 0.0),
    (0.9, 1.0, 0.0, 9.5, 0.1119409440474035, -0.05936823902470451),
    (0.9, 1.0, -10.5, 0.0, 0.012071009552351976, 0.0),
    (0.9, 1.0, 0.0, 10.5, 0.06631063885094544, 0.08869000256856338),
    (0.9, 1.0, -25.0, 0.0, 0.004512147121840188, 0.0),
    (0.9, 1.0, 0.0, 25.0, -0.002059066173935867, 0.002827896891557359),
    (0.9, 1.0, -50.0, 0.0, 0.002175353076856976, 0.0),
    (0.9, 1.0, 0.0, 50.0, -6.81985450242723e-05, 0.002100114234239045),
    (0.9, 2.0, -0.5, 0.0, 0.7724538082977406, 0.0),
    (0.9, 2.0, 0.0, 0.5, 0.9477477917659152, 0.2656268610692055),
    (0.9, 2.0, -3.0, 0.0, 0.3095766951912586, 0.0),
    (0.9, 2.0, 0.0, 3.0, 0.016902187803138034, 0.538628213096196),
    (0.9, 2.0, -9.5, 0.0, 0.10788688352180592, 0.0),
    (0.9, 2.0, 0.0, 9.5, -0.004906254729084622, 0.10272091511046896),
    (0.9, 2.0, -10.5, 0.0, 0.09788337991771383, 0.0),
    (0.9, 2.0, 0.0, 10.5, 0.006784337266406649, 0.0943991986486719),
    (0.9, 2.0, -25.0, 0.0, 0.04168075433772629, 0.0),
    (0.9, 2.0, 0.0, 25.0, 0.0003188529190608491, 0.04211603360889563),
    (0.9, 2.0, -50.0, 0.0, 0.02093366539961178, 0.0),
    (0.9, 2.0, 0.0, 50.0, 8.707080990704717e-05, 0.021024589490973238),
    (1.0, 1.0, -0.5, 0.0, 0.6065306597126334, 0.0),
    (1.0, 1.0, 0.0, 0.5, 0.8775825618903728, 0.479425538604203),
    (1.0, 1.0, -3.0, 0.0, 0.049787068367863944, 0.0),
    (1.0, 1.0, 0.0, 3.0, -0.9899924966004454, 0.1411200080598672),
    (1.0, 1.0, -9.5, 0.0, 7.48518298877006e-05, 0.0),
    (1.0, 1.0, 0.0, 9.5, -0.9971721561963784, -0.0751511204618093),
    (1.0, 1.0, -10.5, 0.0, 2.7536449349747158e-05, 0.0),
    (1.0, 1.0, 0.0, 10.5, -0.4755369279959925, -0.87969575997167),
    (1.0, 1.0, -25.0, 0.0, 1.3887943864964021e-11, 0.0),
    (1.0, 1.0, 0.0, 25.0, 0.9912028118634736, -0.13235175009777303),
    (1.0, 1.0, -50.0, 0.0, 1.9287498479639178e-22, 0.0),
    (1.0, 1.0, 0.0, 50.0, 0.9649660284921133, -0.26237485370392877),
    (1.0, 2.0, -0.5, 0.0, 0.7869386805747332, 0.0),
    (1.0, 2.0, 0.0, 0.5, 0.958851077208406, 0.24483487621925457),
    (1.0, 2.0, -3.0, 0.0, 0.3167376438773787, 0.0),
    (1.0, 2.0, 0.0, 3.0, 0.04704000268662241, 0.6633308322001484),
    (1.0, 2.0, -9.5, 0.0, 0.10525527875474866, 0.0),
    (1.0, 2.0, 0.0, 9.5, -0.007910644259137822, 0.21022864802067143),
    (1.0, 2.0, -10.5, 0.0, 0.09523547271910955, 0.0),
    (1.0, 2.0, 0.0, 10.5, -0.08378054856873049, 0.14052732647580882),
    (1.0, 2.0, -25.0, 0.0, 0.03999999999944448, 0.0),
    (1.0, 2.0, 0.0, 25.0, -0.005294070003910921, 0.00035188752546105607),
    (1.0, 2.0, -50.0, 0.0, 0.02, 0.0),
    (1.0, 2.0, 0.0, 50.0, -0.005247497074078576, 0.0007006794301577345),
    (1.25, 1.0, -0.5, 0.0, 0.6268786972674762, 0.0),
    (1.25, 1.0, 0.0, 0.5, 0.925294443267628, 0.43379568753441705),
    (1.25, 1.0, -3.0, 0.0, -0.05993048888299674, 0.0),
    (1.25, 1.0, 0.0, 3.0, -1.0832798509747374, 1.2200080916758929),
    (1.25, 1.0, -9.5, 0.0, -0.037435122660072435, 0.0),
    (1.25, 1.0, 0.0, 9.5, 4.505589279580564, -2.6194871421597496),
    (1.25, 1.0, -10.5, 0.0, -0.029609632188139594, 0.0),
    (1.25, 1.0, 0.0, 10.5, 6.073169866871943, -0.28311865442754097),
    (1.25, 1.0, -25.0, 0.0, -0.00888909734621139, 0.0),
    (1.25, 1.0, 0.0, 25.0, 46.161752611797084, -3.5457959815890385),
    (1.25, 1.0, -50.0, 0.0, -0.0042572794085854685, 0.0),
    (1.25, 1.0, 0.0, 50.0, -908.9498988848419, 227.2551103503641),
    (1.25, 2.0, -0.5, 0.0, 0.8238539492731942, 0.0),
    (1.25, 2.0, 0.0, 0.5, 0.9785937381566534, 0.1945527023806228),
    (1.25, 2.0, -3.0, 0.0, 0.34288962048165944, 0.0),
    (1.25, 2.0, 0.0, 3.0, 0.33280508888861476, 0.8620558886417778),
    (1.25, 2.0, -9.5, 0.0, 0.09027067004187149, 0.0),
    (1.25, 2.0, 0.0, 9.5, -0.18158288648389379, -0.754085417947076),
    (1.25, 2.0, -10.5, 0.0, 0.08076131643095276, 0.0),
    (1.25, 2.0, 0.0, 10.5, 0.24500046066864758, -0.8149335521775186),
    (1.25, 2.0, -25.0, 0.0, 0.03311664813629088, 0.0),
    (1.25, 2.0, 0.0, 25.0, 0.829542306068387, -3.393578558406478),
    (1.25, 2.0, -50.0, 0.0, 0.01643668072994904, 0.0),
    (1.25, 2.0, 0.0, 50.0, -2.8316884466639145, 40.89449470820795),
    (1.5, 1.0, -0.5, 0.0, 0.6632367948724279, 0.0),
    (1.5, 1.0, 0.0, 0.5, 0.9584200958387319, 0.3737405109884824),
    (1.5, 1.0, -3.0, 0.0, -0.17556537379997825, 0.0),
    (1.5, 1.0, 0.0, 3.0, -0.3894952764039926, 1.7580595070945464),
    (1.5, 1.0, -9.5, 0.0, -0.1315621745093324, 0.0),
    (1.5, 1.0, 0.0, 9.5, -4.620790565666868, -4.280376583871453),
    (1.5, 1.0, -10.5, 0.0, -0.08937823161325613, 0.0),
    (1.5, 1.0, 0.0, 10.5, -3.889648069076318, -6.24090849574668),
    (1.5, 1.0, -25.0, 0.0, -0.0030225852438277496, 0.0),
    (1.5, 1.0, 0.0, 25.0, 20.82378381706268, 43.144325055820254),
    (1.5, 1.0, -50.0, 0.0, -0.004578385105839278, 0.0),
    (1.5, 1.0, 0.0, 50.0, 405.8778932147747, -428.58591674999593),
    (1.5, 2.0, -0.5, 0.0, 0.8595440533980158, 0.0),
    (1.5, 2.0, 0.0, 0.5, 0.9895957298217802, 0.15001661677918032),
    (1.5, 2.0, -3.0, 0.0, 0.3927296336721705, 0.0),
    (1.5, 2.0, 0.0, 3.0, 0.6408715865302828, 0.8109370617426553),
    (1.5, 2.0, -9.5, 0.0, 0.05167876758355488, 0.0),
    (1.5, 2.0, 0.0, 9.5, -1.336532324367147, 0.4798325166874119),
    (1.5, 2.0, -10.5, 0.0, 0.0412378227039964, 0.0),
    (1.5, 2.0, 0.0, 10.5, -1.5283631000206892, 0.10989975183226976),
    (1.5, 2.0, -25.0, 0.0, 0.023727219294799533, 0.0),
    (1.5, 2.0, 0.0, 25.0, 5.5890730505322965, 0.43716431598926947),
    (1.5, 2.0, -50.0, 0.0, 0.011167669745851065, 0.0),
    (1.5, 2.0, 0.0, 50.0, -12.394734748414015, -41.6765216591819),
    (1.75, 1.0, -0.5, 0.0, 0.7099532177205843, 0.0),
    (1.75, 1.0, 0.0, 0.5, 0.9785194629645018, 0.3101997531542049),
    (1.75, 1.0, -3.0, 0.0, -0.22260625776437826, 0.0),
    (1.75, 1.0, 0.0, 3.0, 0.24226452573754262, 1.7203684657991867),
    (1.75, 1.0, -9.5, 0.0, -0.4879661410924993, 0.0),
    (1.75, 1.0, 0.0, 9.5, -5.20388466764249, 1.6341821317970655),
    (1.75, 1.0, -10.5, 0.0, -0.41733014178893846, 0.0),
    (1.75, 1.0, 0.0, 10.5, -6.177600875147412, 0.8663130105756706),
    (1.75, 1.0, -25.0, 0.0, 0.2716853059670258, 0.0),
    (1.75, 1.0, 0.0, 25.0, 5.943419797097371, -28.28566546282655),
    (1.75, 1.0, -50.0, 0.0, -0.13970738964219356, 0.0),
    (1.75, 1.0, 0.0, 50.0, 100.55840948163963, 166.47529160494233),
    (1.75, 2.0, -0.5, 0.0, 0.8916238129708856, 0.0),
    (1.75, 2.0, 0.0, 0.5, 0.9952253418703377, 0.11293756651896204),
    (1.75, 2.0, -3.0, 0.0, 0.4721940196772238, 0.0),
    (1.75, 2.0, 0.0, 3.0, 0.8300601141991306, 0.6550255389370824),
    (1.75, 2.0, -9.5, 0.0, 0.002843830911133306, 0.0),
    (1.75, 2.0, 0.0, 9.5, -0.5275219092515657, 1.4434906694287455),
    (1.75, 2.0, -10.5, 0.0, -0.02253634360871793, 0.0),
    (1.75, 2.0, 0.0, 10.5, -0.8145234537488344, 1.4339788149696189),
    (1.75, 2.0, -25.0, 0.0, -0.005854285861473059, 0.0),
    (1.75, 2.0, 0.0, 25.0, -2.923189214797047, -3.5297998307037535),
    (1.75, 2.0, -50.0, 0.0, 0.013114250963098534, 0.0),
    (1.75, 2.0, 0.0, 50.0, 20.625151325624937, 2.698146468677511),
    (2.0, 1.0, -0.5, 0.0, 0.7602445970756302, 0.0),
    (2.0, 1.0, 0.0, 0.5, 0.9895848833999199, 0.24982639750046154),
    (2.0, 1.0, -3.0, 0.0, -0.16055653857469063, 0.0),
    (2.0, 1.0, 0.0, 3.0, 0.6270074069694014, 1.4625669392022678),
    (2.0, 1.0, -9.5, 0.0, -0.9982371903219421, 0.0),
    (2.0, 1.0, 0.0, 9.5, -2.55993765312968, 3.58044471108773),
    (2.0, 1.0, -10.5, 0.0, -0.9951254487887088, 0.0),
    (2.0, 1.0, 0.0, 10.5, -3.2950757865805604, 3.677197235680759),
    (2.0, 1.0, -25.0, 0.0, 0.28366218546322625, 0.0),
    (2.0, 1.0, 0.0, 25.0, -15.855979276337408, -6.579662600415502),
    (2.0, 1.0, -50.0, 0.0, 0.7053479063084424, 0.0),
    (2.0, 1.0, 0.0, 50.0, 21.050556181654844, -71.15525988098221),
    (2.0, 2.0, -0.5, 0.0, 0.9187253698655684, 0.0),
    (2.0, 2.0, 0.0, 0.5, 0.9979168388974026, 0.08330853252890416),
    (2.0, 2.0, -3.0, 0.0, 0.5698600991825139, 0.0),
    (2.0, 2.0, 0.0, 3.0, 0.9252230972337295, 0.4946489431329219),
    (2.0, 2.0, -9.5, 0.0, 0.019255926929416106, 0.0),
    (2.0, 2.0, 0.0, 9.5, 0.27024441307955477, 1.4151523953022374),
    (2.0, 2.0, -10.5, 0.0, -0.03043391149464505, 0.0),
    (2.0, 2.0, 0.0, 10.5, 0.11453130226519241, 1.523499106822379),
    (2.0, 2.0, -25.0, 0.0, -0.1917848549326277, 0.0),
    (2.0, 2.0, 0.0, 25.0, -3.1706550695892495, 1.3064815587345915),
    (2.0, 2.0, -50.0, 0.0, 0.10024812527586707, 0.0),
    (2.0, 2.0, 0.0, 50.0, -5.011307618103748, -9.221036594280458),
];
