mod common;

use common::{pixel_column, random_image};
use proptest::prelude::*;
use rlcseg::*;

fn image() -> impl Strategy<Value = BitImage> {
    (1usize..40, 1usize..48, any::<u64>()).prop_map(|(h, w, seed)| random_image(h, w, seed))
}

fn config() -> impl Strategy<Value = SegmentConfig> {
    (
        0u32..3,
        prop_oneof![
            (1usize..12).prop_map(ThresholdMode::Fixed),
            Just(ThresholdMode::AutoLine),
            Just(ThresholdMode::AutoPage),
        ],
    )
        .prop_map(|(tau, threshold)| SegmentConfig { tau, threshold })
}

proptest! {
    #[test]
    fn pbm_roundtrip(img in image(), ascii in any::<bool>()) {
        prop_assert_eq!(load_pbm(&save_pbm(&img, ascii)).unwrap(), img);
    }

    #[test]
    fn rle_bijection(img in image()) {
        let doc = compress(&img);
        prop_assert_eq!(&decompress(&doc), &img);
        let reparsed = RleDocument::new(doc.width(), doc.rows().iter().map(|r| r.runs().to_vec()).collect()).unwrap();
        prop_assert_eq!(compress(&decompress(&reparsed)), reparsed);
        prop_assert_eq!(RleDocument::from_rlc(&doc.to_rlc()).unwrap(), doc.clone());
        for (row, pixels) in doc.rows().iter().zip(img.rows()) {
            let black = pixels.iter().filter(|&&p| p).count() as u32;
            prop_assert_eq!(row.black_runs().sum::<u32>(), black);
            prop_assert_eq!(row.white_runs().sum::<u32>(), pixels.len() as u32 - black);
        }
        // the leading zero of a row that starts black is the only entry not
        // backed by a pixel
        let nonzero: usize = doc.rows().iter().map(|r| r.runs().iter().filter(|&&v| v > 0).count()).sum();
        prop_assert!(nonzero <= img.height() * img.width());
        prop_assert!(doc.run_entries() <= img.height() * (img.width() + 1));
    }

    #[test]
    fn mh_roundtrip(img in image()) {
        let doc = compress(&img);
        let bytes = mh_encode(&doc).to_bytes();
        prop_assert_eq!(mh_decode(&MhBitstream::from_bytes(&bytes).unwrap()).unwrap(), doc);
    }

    #[test]
    fn scanner_matches_raster(img in image(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let doc = compress(&img);
        let (r0, r1) = {
            let x = a.index(img.height()) + 1;
            let y = b.index(img.height()) + 1;
            (x.min(y), x.max(y))
        };
        let mut scanner = new_scanner(&doc, Span::new(r0, r1)).unwrap();
        for col in 1..=img.width() {
            let t = scanner.advance().unwrap();
            prop_assert_eq!(t.column, col);
            prop_assert_eq!(t.bits, pixel_column(&img, r0..=r1, col));
        }
        prop_assert!(scanner.advance().is_err());
    }

    #[test]
    fn profiles_match_raster_and_conserve_ink(img in image()) {
        let doc = compress(&img);
        let rows = row_profile(&doc);
        let brute: Vec<u32> = img.rows().map(|r| r.iter().filter(|&&p| p).count() as u32).collect();
        prop_assert_eq!(&rows.values, &brute);
        let cols = column_profile(&doc, Span::new(1, img.height())).unwrap();
        prop_assert_eq!(rows.total(), img.black_count() as u64);
        prop_assert_eq!(cols.total(), img.black_count() as u64);
        let bound = (img.height() * img.width().div_ceil(2)) as u64;
        prop_assert!(rows.addition_count <= bound);
        let multi_pixel_run = doc.rows().iter().any(|r| r.runs().iter().any(|&v| v > 1));
        if multi_pixel_run {
            prop_assert!(rows.addition_count < (img.height() * img.width()) as u64);
        }
    }

    #[test]
    fn compressed_and_pixel_paths_agree(img in image(), config in config()) {
        let a = segment_document(&compress(&img), &config).unwrap();
        let b = reference_segment(&img, &config).unwrap();
        prop_assert!(a.same_segmentation(&b), "{:?}\n{:?}", a, b);
        prop_assert_eq!(a.cost.pixel_reads, 0);
    }

    #[test]
    fn chars_cover_ink_and_words_partition_chars(img in image(), config in config()) {
        let r = segment_document(&compress(&img), &config).unwrap();
        let truth_view = GroundTruth {
            height: r.height,
            width: r.width,
            lines: r.lines.iter().map(|l| TruthLine { rows: l.rows, words: l.words.clone() }).collect(),
        };
        truth_view.validate().unwrap();
        for line in &r.lines {
            let chars: Vec<Span> = line.words.iter().flat_map(|w| w.chars.iter().map(|c| c.cols)).collect();
            for c in 1..=img.width() {
                let ink = (line.rows.start..=line.rows.end).any(|row| img.get(row, c));
                let covered = chars.iter().any(|s| s.contains(c));
                prop_assert_eq!(ink, covered, "column {}", c);
            }
            for w in &line.words {
                prop_assert_eq!(w.cols.start, w.chars[0].cols.start);
                prop_assert_eq!(w.cols.end, w.chars.last().unwrap().cols.end);
            }
        }
        let ink_rows: usize = (1..=img.height()).filter(|&row| img.row(row).iter().filter(|&&p| p).count() as u32 > config.tau).count();
        prop_assert_eq!(r.lines.iter().map(|l| l.rows.len()).sum::<usize>(), ink_rows);
    }

    #[test]
    fn threshold_monotonicity(img in image()) {
        let doc = compress(&img);
        let run = |t: usize| segment_document(&doc, &SegmentConfig { tau: 0, threshold: ThresholdMode::Fixed(t) }).unwrap();
        let ones = run(1);
        for line in &ones.lines {
            prop_assert!(line.words.iter().all(|w| w.chars.len() == 1));
        }
        let mut prev = ones.word_count();
        for t in 2..=img.width() + 1 {
            let r = run(t);
            prop_assert!(r.word_count() <= prev);
            prop_assert_eq!(r.char_count(), ones.char_count());
            prev = r.word_count();
        }
        let wide = run(img.width() + 1);
        for line in &wide.lines {
            prop_assert_eq!(line.words.len(), 1);
        }
    }

    #[test]
    fn blank_rows_shift_lines(img in image(), top in 0usize..5, bottom in 0usize..5) {
        let mut pixels = vec![false; top * img.width()];
        pixels.extend_from_slice(img.pixels());
        pixels.extend(std::iter::repeat_n(false, bottom * img.width()));
        let padded = BitImage::from_pixels(img.height() + top + bottom, img.width(), pixels).unwrap();
        let a = segment_lines(&row_profile(&compress(&img)), 0);
        let b = segment_lines(&row_profile(&compress(&padded)), 0);
        prop_assert_eq!(a.len(), b.len());
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            prop_assert_eq!(x.rows.start + top, y.rows.start);
            prop_assert_eq!(x.rows.end + top, y.rows.end);
            if i == 0 {
                prop_assert_eq!(x.gap_above + top, y.gap_above);
            } else {
                prop_assert_eq!(x.gap_above, y.gap_above);
            }
        }
    }

    #[test]
    fn synth_invariants(lines in 0usize..4, words in 1usize..4, chars in 1usize..4,
                        gw in 1usize..6, gh in 1usize..6, cg in 1usize..3, extra in 1usize..4,
                        lg in 1usize..4, margin in 0usize..3, seed in any::<u64>()) {
        let spec = LayoutSpec {
            lines, words_per_line: words, chars_per_word: chars,
            glyph_width: gw, glyph_height: gh, glyph_width_jitter: 1,
            char_gap: cg, word_gap: cg + extra, line_gap: lg, margin,
            perforation: 0.3, page: None, seed,
        };
        let (img, truth) = synth_doc(&spec).unwrap();
        truth.validate().unwrap();
        prop_assert_eq!((img.height(), img.width()), (truth.height, truth.width));
        for pair in truth.lines.windows(2) {
            let gap = pair[1].rows.start - pair[0].rows.end - 1;
            prop_assert!(gap >= lg);
        }
        for line in &truth.lines {
            for w in &line.words {
                for pair in w.chars.windows(2) {
                    prop_assert_eq!(pair[1].cols.start - pair[0].cols.end - 1, cg);
                }
            }
        }
        prop_assert_eq!(synth_doc(&spec).unwrap(), (img, truth));
    }

    #[test]
    fn evaluate_identity(lines in 0usize..4, words in 1usize..4, chars in 1usize..4, tol in 0usize..3, seed in any::<u64>()) {
        let spec = LayoutSpec { lines, words_per_line: words, chars_per_word: chars, seed, ..LayoutSpec::default() };
        let (_, truth) = synth_doc(&spec).unwrap();
        let e = evaluate(&truth, &truth, tol).unwrap();
        for (_, m) in e.levels() {
            prop_assert_eq!((m.precision, m.recall, m.f_measure), (100.0, 100.0, 100.0));
        }
    }
}
