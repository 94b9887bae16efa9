// Upper α/(2m) Student-t quantiles for α = 0.05 and m−2 degrees of freedom,
// computed independently with 40-digit arithmetic (mpmath).
pub const T_UPPER: &[(usize, f64)] = &[
    (3, 38.188459297025609056),
    (4, 8.8602000346542995143),
    (5, 5.8409093097333572607),
    (6, 4.8510084430978595139),
    (7, 4.3817529621663054435),
    (8, 4.1151701175956905864),
    (9, 3.9466838663208092089),
    (10, 3.8325186853443428269),
    (11, 3.7513146647968271114),
    (12, 3.6914783871392563228),
    (13, 3.6462041825277146769),
    (14, 3.6112492168964939426),
    (15, 3.5838393924732446629),
    (16, 3.5620894950023954354),
    (17, 3.5446767899400026763),
    (18, 3.5306479430084469152),
    (19, 3.5192999602032481704),
    (20, 3.5101041304634211639),
    (21, 3.5026559386265502159),
    (22, 3.4966411965676412431),
    (23, 3.4918126028834409117),
    (24, 3.4879731831722303759),
    (25, 3.4849643749398134941),
    (26, 3.482657312441370921),
    (27, 3.4809463569628563562),
    (28, 3.4797442291089316582),
    (29, 3.4789783013869510679),
    (30, 3.4785877427930955538),
    (31, 3.4785212969442096277),
    (32, 3.4787355367933920321),
    (33, 3.4791934817006973614),
    (34, 3.4798634927420825528),
    (35, 3.4807183836324871476),
    (36, 3.4817347001638477062),
    (37, 3.4828921323981272182),
    (38, 3.4841730322237133452),
    (39, 3.4855620151192605281),
    (40, 3.4870456296579663748),
    (41, 3.4886120818411905109),
    (42, 3.4902510040686709467),
    (43, 3.4919532606463734221),
    (44, 3.4937107833572357249),
    (45, 3.4955164318885454382),
    (46, 3.4973638749066619719),
    (47, 3.4992474883581188427),
    (48, 3.5011622682030684915),
    (49, 3.5031037552883273631),
    (50, 3.5050679704702029187),
    (51, 3.5070513584227448901),
    (52, 3.509050738831195185),
    (53, 3.5110632638857381248),
    (54, 3.5130863811669501219),
    (55, 3.5151178011592855777),
    (56, 3.5171554687485628753),
    (57, 3.5191975381585248549),
    (58, 3.521242350863959172),
    (59, 3.5232884160866282858),
    (60, 3.5253343935378286554),
    (61, 3.5273790781197518038),
    (62, 3.529421386338557808),
    (63, 3.5314603442164963152),
    (64, 3.5334950765195835164),
    (65, 3.535524797142135263),
    (66, 3.5375488005105811745),
    (67, 3.5395664538870310939),
    (68, 3.5415771904685206167),
    (69, 3.5435805031911306228),
    (70, 3.5455759391595928667),
    (71, 3.5475630946328401425),
    (72, 3.5495416105044699714),
    (73, 3.5515111682244619952),
    (74, 3.553471486114886873),
    (75, 3.555422316037908103),
    (76, 3.5573634403792258561),
    (77, 3.5592946693143436475),
    (78, 3.5612158383287394261),
    (79, 3.5631268059662647695),
    (80, 3.5650274517829410157),
    (81, 3.5669176744858221),
    (82, 3.5687973902387957838),
    (83, 3.5706665311191366574),
    (84, 3.5725250437103391314),
    (85, 3.5743728878182753616),
    (86, 3.5762100352990664966),
    (87, 3.5780364689882472745),
    (88, 3.5798521817218624161),
    (89, 3.5816571754410746227),
    (90, 3.5834514603727023123),
    (91, 3.5852350542788527492),
    (92, 3.587007981769483589),
    (93, 3.5887702736723223897),
    (94, 3.5905219664551074746),
    (95, 3.5922631016955918041),
    (96, 3.5939937255951804904),
    (97, 3.595713888532457765),
    (98, 3.597423644653205424),
    (99, 3.5991230514938263),
    (100, 3.6008121696353668924),
    (101, 3.6024910623855862625),
    (102, 3.604159795486746595),
    (103, 3.6058184368470070506),
    (104, 3.6074670562934889884),
    (105, 3.6091057253452493683),
    (106, 3.6107345170045519738),
    (107, 3.6123535055649646377),
    (108, 3.6139627664349363566),
    (109, 3.6155623759756223142),
    (110, 3.6171524113518285644),
    (111, 3.6187329503950424584),
    (112, 3.6203040714776007634),
    (113, 3.6218658533971256302),
    (114, 3.6234183752704298531),
    (115, 3.6249617164361578984),
    (116, 3.6264959563654885317),
    (117, 3.6280211745802791016),
    (118, 3.6295374505780810942),
    (119, 3.6310448637635019069),
    (120, 3.6325434933854292818),
    (121, 3.634033418479672832),
    (122, 3.6355147178166119192),
    (123, 3.6369874698534710657),
    (124, 3.6384517526908733781),
    (125, 3.6399076440333493504),
    (126, 3.6413552211535031153),
    (127, 3.6427945608595609096),
    (128, 3.6442257394660473949),
    (129, 3.6456488327673546752),
    (130, 3.6470639160139865302),
    (131, 3.6484710638912766596),
    (132, 3.6498703505003947324),
    (133, 3.6512618493414678613),
    (134, 3.6526456332986578707),
    (135, 3.6540217746270464962),
    (136, 3.6553903449411915067),
    (137, 3.6567514152052267755),
    (138, 3.6581050557243885887),
    (139, 3.659451336137859043),
    (140, 3.6607903254128253057),
    (141, 3.662122091839660831),
    (142, 3.663446703028141408),
    (143, 3.6647642259046151858),
    (144, 3.6660747267100516356),
    (145, 3.6673782709988997883),
    (146, 3.6686749236386910757),
    (147, 3.6699647488103267273),
    (148, 3.6712478100089939591),
    (149, 3.6725241700456591727),
    (150, 3.6737938910490900676),
    (151, 3.6750570344683619986),
    (152, 3.6763136610758070875),
    (153, 3.6775638309703675523),
    (154, 3.6788076035813174602),
    (155, 3.6800450376723196577),
    (156, 3.6812761913457870021),
    (157, 3.6825011220475192182),
    (158, 3.6837198865715887539),
    (159, 3.6849325410654509097),
    (160, 3.6861391410352552906),
    (161, 3.6873397413513372752),
    (162, 3.6885343962538697314),
    (163, 3.6897231593586566349),
    (164, 3.6909060836630515747),
    (165, 3.6920832215519853675),
    (166, 3.6932546248040881556),
    (167, 3.6944203445978924329),
    (168, 3.6955804315181044461),
    (169, 3.6967349355619323457),
    (170, 3.6978839061454603312),
    (171, 3.699027392110058841),
    (172, 3.7001654417288215904),
    (173, 3.7012981027130209627),
    (174, 3.7024254222185739133),
    (175, 3.7035474468525111522),
    (176, 3.7046642226794429426),
    (177, 3.7057757952280153784),
    (178, 3.7068822094973514981),
    (179, 3.7079835099634720522),
    (180, 3.7090797405856911689),
    (181, 3.7101709448129825612),
    (182, 3.7112571655903122911),
    (183, 3.7123384453649344535),
    (184, 3.7134148260926464623),
    (185, 3.7144863492440009258),
    (186, 3.7155530558104713742),
    (187, 3.7166149863105693657),
    (188, 3.7176721807959107389),
    (189, 3.7187246788572290052),
    (190, 3.7197725196303340856),
    (191, 3.7208157418020147908),
    (192, 3.7218543836158836269),
    (193, 3.7228884828781626758),
    (194, 3.7239180769634094598),
    (195, 3.7249432028201818423),
    (196, 3.7259638969766411548),
    (197, 3.7269801955460928646),
    (198, 3.7279921342324642161),
    (199, 3.7289997483357183846),
    (200, 3.7300030727572047836),
    (201, 3.7310021420049452592),
    (202, 3.7319969901988559904),
    (203, 3.7329876510759049947),
    (204, 3.733974157995205211),
    (205, 3.7349565439430431994),
    (206, 3.7359348415378435624),
    (207, 3.7369090830350692451),
    (208, 3.7378793003320579296),
    (209, 3.7388455249727947851),
    (210, 3.7398077881526218794),
    (211, 3.7407661207228846001),
    (212, 3.7417205531955154701),
    (213, 3.7426711157475557756),
    (214, 3.7436178382256154584),
    (215, 3.7445607501502717479),
    (216, 3.7454998807204070393),
    (217, 3.7464352588174865432),
    (218, 3.7473669130097762539),
    (219, 3.7482948715565018037),
    (220, 3.7492191624119487852),
    (221, 3.7501398132295051382),
    (222, 3.7510568513656462132),
    (223, 3.7519703038838631318),
    (224, 3.7528801975585350759),
    (225, 3.7537865588787461451),
    (226, 3.7546894140520474307),
    (227, 3.7555887890081649574),
    (228, 3.7564847094026541509),
    (229, 3.7573772006205014933),
    (230, 3.7582662877796740297),
    (231, 3.7591519957346173921),
    (232, 3.7600343490797030073),
    (233, 3.7609133721526251559),
    (234, 3.76178908903774855),
    (235, 3.7626615235694070932),
    (236, 3.7635306993351544883),
    (237, 3.7643966396789673539),
    (238, 3.7652593677044015077),
    (239, 3.7661189062777020723),
    (240, 3.766975278030868056),
    (241, 3.7678285053646720546),
    (242, 3.7686786104516357183),
    (243, 3.7695256152389616213),
    (244, 3.7703695414514221682),
    (245, 3.7712104105942061639),
    (246, 3.7720482439557236691),
    (247, 3.7728830626103697592),
    (248, 3.7737148874212477952),
    (249, 3.7745437390428528106),
    (250, 3.7753696379237156143),
    (251, 3.7761926043090081974),
    (252, 3.7770126582431110307),
    (253, 3.7778298195721428304),
    (254, 3.7786441079464533615),
    (255, 3.7794555428230798455),
    (256, 3.7802641434681675269),
    (257, 3.7810699289593549504),
    (258, 3.7818729181881244916),
    (259, 3.7826731298621186758),
    (260, 3.7834705825074228161),
    (261, 3.7842652944708144903),
    (262, 3.7850572839219803726),
    (263, 3.7858465688557009278),
    (264, 3.786633167094003467),
    (265, 3.7874170962882840604),
    (266, 3.7881983739213987908),
    (267, 3.78897701730972483),
    (268, 3.7897530436051918085),
    (269, 3.7905264697972839444),
    (270, 3.7912973127150133903),
    (271, 3.7920655890288652495),
    (272, 3.7928313152527147067),
    (273, 3.7935945077457167112),
    (274, 3.7943551827141686436),
    (275, 3.7951133562133463919),
    (276, 3.7958690441493142543),
    (277, 3.7966222622807090807),
    (278, 3.7973730262204990588),
    (279, 3.7981213514377175432),
    (280, 3.7988672532591723204),
    (281, 3.7996107468711306969),
    (282, 3.8003518473209807895),
    (283, 3.8010905695188693933),
    (284, 3.8018269282393167953),
    (285, 3.8025609381228088964),
    (286, 3.8032926136773669975),
    (287, 3.8040219692800956015),
    (288, 3.8047490191787085764),
    (289, 3.8054737774930340186),
    (290, 3.8061962582164981501),
    (291, 3.8069164752175885796),
    (292, 3.8076344422412972495),
    (293, 3.8083501729105433875),
    (294, 3.8090636807275767742),
    (295, 3.8097749790753616371),
    (296, 3.8104840812189414702),
    (297, 3.8111910003067850792),
    (298, 3.811895749372114144),
    (299, 3.8125983413342125863),
    (300, 3.8132987889997180256),
    (301, 3.8139971050638956018),
    (302, 3.8146933021118944386),
    (303, 3.8153873926199870163),
    (304, 3.8160793889567917188),
    (305, 3.8167693033844788164),
    (306, 3.817457148059960138),
    (307, 3.8181429350360626875),
    (308, 3.8188266762626864492),
    (309, 3.8195083835879466278),
    (310, 3.8201880687593005609),
    (311, 3.8208657434246595405),
    (312, 3.8215414191334857746),
    (313, 3.8222151073378747165),
    (314, 3.8228868193936229858),
    (315, 3.8235565665612821011),
    (316, 3.8242243600071982416),
    (317, 3.8248902108045382488),
    (318, 3.8255541299343020804),
    (319, 3.8262161282863219187),
    (320, 3.8268762166602481399),
    (321, 3.8275344057665223395),
    (322, 3.828190706227337613),
    (323, 3.8288451285775862816),
    (324, 3.8294976832657952544),
    (325, 3.8301483806550492121),
    (326, 3.8307972310239017951),
    (327, 3.8314442445672749771),
    (328, 3.8320894313973468007),
    (329, 3.8327328015444276489),
    (330, 3.8333743649578252242),
    (331, 3.8340141315066984033),
    (332, 3.834652110980900134),
    (333, 3.835288313091809536),
    (334, 3.8359227474731533664),
    (335, 3.8365554236818170082),
    (336, 3.8371863511986451354),
    (337, 3.8378155394292322081),
    (338, 3.8384429977047029476),
    (339, 3.8390687352824829389),
    (340, 3.8396927613470595049),
    (341, 3.840315085010732996),
    (342, 3.8409357153143586356),
    (343, 3.8415546612280790586),
    (344, 3.8421719316520476788),
    (345, 3.8427875354171430207),
    (346, 3.8434014812856741439),
    (347, 3.8440137779520772926),
    (348, 3.8446244340436038953),
    (349, 3.8452334581210000408),
    (350, 3.845840858679177553),
    (351, 3.8464466441478767861),
    (352, 3.8470508228923212595),
    (353, 3.8476534032138642488),
    (354, 3.8482543933506274494),
    (355, 3.8488538014781318245),
    (356, 3.8494516357099207517),
    (357, 3.8500479040981755753),
    (358, 3.8506426146343236739),
    (359, 3.8512357752496391505),
    (360, 3.8518273938158362472),
    (361, 3.8524174781456555899),
    (362, 3.8530060359934433633),
    (363, 3.8535930750557235166),
    (364, 3.8541786029717630961),
    (365, 3.8547626273241308046),
    (366, 3.8553451556392488796),
    (367, 3.8559261953879383853),
    (368, 3.8565057539859580105),
    (369, 3.8570838387945364628),
    (370, 3.8576604571208985477),
    (371, 3.8582356162187850218),
    (372, 3.8588093232889663049),
    (373, 3.8593815854797501372),
    (374, 3.8599524098874832647),
    (375, 3.860521803557047236),
    (376, 3.86108977348234839),
    (377, 3.8616563266068021167),
    (378, 3.862221469823811467),
    (379, 3.8627852099772401917),
    (380, 3.8633475538618802835),
    (381, 3.8639085082239140983),
    (382, 3.8644680797613711296),
    (383, 3.8650262751245795076),
    (384, 3.8655831009166122967),
    (385, 3.8661385636937286591),
    (386, 3.8666926699658099567),
    (387, 3.8672454261967908575),
    (388, 3.8677968388050855146),
    (389, 3.8683469141640088843),
    (390, 3.8688956586021932483),
    (391, 3.8694430784040000036),
    (392, 3.8699891798099267849),
    (393, 3.8705339690170099797),
    (394, 3.8710774521792226995),
    (395, 3.8716196354078682664),
    (396, 3.8721605247719692742),
    (397, 3.8727001262986522843),
    (398, 3.873238445973528212),
    (399, 3.8737754897410684614),
    (400, 3.8743112635049768654),
    (401, 3.8748457731285574835),
    (402, 3.8753790244350783152),
    (403, 3.875911023208130979),
    (404, 3.8764417751919864126),
    (405, 3.8769712860919466447),
    (406, 3.8774995615746926893),
    (407, 3.8780266072686286145),
    (408, 3.8785524287642218334),
    (409, 3.8790770316143396677),
    (410, 3.8796004213345822315),
    (411, 3.8801226034036116822),
    (412, 3.8806435832634778869),
    (413, 3.881163366319940548),
    (414, 3.8816819579427878363),
    (415, 3.8821993634661515735),
    (416, 3.8827155881888190103),
    (417, 3.8832306373745412425),
    (418, 3.8837445162523383081),
    (419, 3.8842572300168010078),
    (420, 3.8847687838283894903),
    (421, 3.8852791828137286432),
    (422, 3.8857884320659003303),
    (423, 3.8862965366447325148),
    (424, 3.8868035015770853076),
    (425, 3.8873093318571339797),
    (426, 3.887814032446648976),
    (427, 3.8883176082752729689),
    (428, 3.8888200642407949889),
    (429, 3.8893214052094216669),
    (430, 3.8898216360160456268),
    (431, 3.8903207614645110611),
    (432, 3.8908187863278765274),
    (433, 3.8913157153486749969),
    (434, 3.891811553239171192),
    (435, 3.8923063046816162442),
    (436, 3.8927999743284997067),
    (437, 3.8932925668027989532),
    (438, 3.893784086698225996),
    (439, 3.8942745385794717541),
    (440, 3.8947639269824478026),
    (441, 3.8952522564145256355),
    (442, 3.8957395313547734698),
    (443, 3.8962257562541906227),
    (444, 3.8967109355359394909),
    (445, 3.8971950735955751606),
    (446, 3.8976781748012726775),
    (447, 3.8981602434940520042),
    (448, 3.8986412839880006937),
    (449, 3.8991213005704943065),
    (450, 3.8996002975024145971),
    (451, 3.9000782790183654988),
    (452, 3.9005552493268869306),
    (453, 3.901031212610666455),
    (454, 3.9015061730267488093),
    (455, 3.9019801347067433383),
    (456, 3.9024531017570293521),
    (457, 3.9029250782589594335),
    (458, 3.9033960682690607197),
    (459, 3.903866075819234182),
    (460, 3.9043351049169519272),
    (461, 3.9048031595454525441),
    (462, 3.9052702436639345179),
    (463, 3.9057363612077477348),
    (464, 3.9062015160885831),
    (465, 3.9066657121946602907),
    (466, 3.9071289533909136654),
    (467, 3.9075912435191763522),
    (468, 3.9080525863983625355),
    (469, 3.908512985824647964),
    (470, 3.9089724455716486988),
    (471, 3.9094309693905981234),
    (472, 3.9098885610105222343),
    (473, 3.9103452241384132338),
    (474, 3.9108009624594014421),
    (475, 3.9112557796369255503),
    (476, 3.9117096793129012324),
    (477, 3.9121626651078881341),
    (478, 3.9126147406212552593),
    (479, 3.9130659094313447697),
    (480, 3.9135161750956342181),
    (481, 3.9139655411508972314),
    (482, 3.914414011113362662),
    (483, 3.9148615884788722242),
    (484, 3.9153082767230366336),
    (485, 3.9157540793013902648),
    (486, 3.9161989996495443463),
    (487, 3.9166430411833387071),
    (488, 3.9170862072989920922),
    (489, 3.9175285013732510627),
    (490, 3.917969926763537497),
    (491, 3.9184104868080947076),
    (492, 3.9188501848261321897),
    (493, 3.9192890241179690168),
    (494, 3.9197270079651758982),
    (495, 3.9201641396307159127),
    (496, 3.9206004223590839342),
    (497, 3.9210358593764447633),
    (498, 3.921470453890769978),
    (499, 3.9219042090919735196),
    (500, 3.9223371281520460262),
    (501, 3.9227692142251879283),
];
