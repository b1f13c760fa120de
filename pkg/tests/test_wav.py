import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from respscreen.audio.categories import SoundCategory
from respscreen.audio.wav import decode_wav
from respscreen.errors import EmptyAudio, MalformedContainer, UnsupportedEncoding

from .conftest import pcm16_wav_from_ints, reference_wav_bytes, tone


class TestPcm16:
    def test_two_zero_samples(self):
        clip = decode_wav(pcm16_wav_from_ints([0, 0], 16000))
        assert clip.samples.tolist() == [0.0, 0.0]
        assert clip.sample_rate == 16000

    def test_full_scale_negative_is_minus_one(self):
        clip = decode_wav(pcm16_wav_from_ints([-32768, 32767], 8000))
        assert clip.samples[0] == -1.0
        assert clip.samples[1] == 32767 / 32768

    def test_sine_round_trip_against_reference_writer(self):
        buffer = tone(1000.0, 0.25, 44100, amplitude=0.999)
        clip = decode_wav(reference_wav_bytes(buffer, 44100))
        assert clip.sample_rate == 44100
        assert len(clip.samples) == len(buffer)
        assert np.max(np.abs(clip.samples - buffer)) <= 1.0 / 32768

    @given(
        values=st.lists(st.integers(-32768, 32767), min_size=1, max_size=400),
        rate=st.sampled_from([8000, 16000, 44100, 48000]),
    )
    @settings(max_examples=60, deadline=None)
    def test_any_pcm16_payload_scales_by_2_pow_15(self, values, rate):
        clip = decode_wav(pcm16_wav_from_ints(values, rate))
        assert clip.samples.tolist() == [v / 32768 for v in values]


class TestFloat32:
    def test_float_samples_pass_through(self):
        buffer = np.array([0.25, -0.5, 0.75, -1.0])
        clip = decode_wav(reference_wav_bytes(buffer, 22050, encoding="float32"))
        np.testing.assert_array_equal(clip.samples, buffer.astype(np.float32))

    def test_out_of_range_floats_are_clipped(self):
        buffer = np.array([1.5, -2.0, 0.0])
        clip = decode_wav(reference_wav_bytes(buffer, 16000, encoding="float32"))
        assert clip.samples.tolist() == [1.0, -1.0, 0.0]


class TestChannelsAndChunks:
    def test_stereo_is_averaged(self):
        frames = np.array([[0.5, -0.5], [0.25, 0.75]])
        clip = decode_wav(reference_wav_bytes(frames, 16000))
        expected = frames.mean(axis=1)
        assert np.max(np.abs(clip.samples - expected)) <= 1.0 / 32768

    def test_unknown_chunks_are_skipped(self):
        data = reference_wav_bytes(
            tone(500.0, 0.1, 16000),
            16000,
            extra_chunks=[(b"LIST", b"INFOsoftware"), (b"junk", b"\x01\x02\x03")],
        )
        clip = decode_wav(data)
        assert clip.duration == pytest.approx(0.1)

    def test_odd_sized_chunk_respects_word_alignment(self):
        data = reference_wav_bytes(
            tone(500.0, 0.05, 16000), 16000, extra_chunks=[(b"note", b"abc")]
        )
        assert decode_wav(data).sample_rate == 16000

    def test_category_is_attached_when_given(self):
        data = pcm16_wav_from_ints([100, -100], 16000)
        clip = decode_wav(data, category=SoundCategory.COUGH_HEAVY)
        assert clip.category is SoundCategory.COUGH_HEAVY


class TestRejections:
    def test_bad_riff_magic(self):
        with pytest.raises(MalformedContainer):
            decode_wav(b"RIFX" + bytes(40))

    def test_bad_wave_tag(self):
        blob = bytearray(pcm16_wav_from_ints([0], 16000))
        blob[8:12] = b"AVI "
        with pytest.raises(MalformedContainer):
            decode_wav(bytes(blob))

    def test_truncated_data_chunk(self):
        blob = pcm16_wav_from_ints([1, 2, 3, 4], 16000)
        with pytest.raises(MalformedContainer):
            decode_wav(blob[:-4])

    def test_missing_fmt_chunk(self):
        payload = b"\x00\x00"
        body = b"WAVEdata" + len(payload).to_bytes(4, "little") + payload
        blob = b"RIFF" + len(body).to_bytes(4, "little") + body
        with pytest.raises(MalformedContainer):
            decode_wav(blob)

    def test_compressed_format_code_rejected(self):
        blob = bytearray(pcm16_wav_from_ints([0, 0], 16000))
        blob[20:22] = (85).to_bytes(2, "little")  # an MP3-style format tag
        with pytest.raises(UnsupportedEncoding):
            decode_wav(bytes(blob))

    def test_24_bit_depth_rejected(self):
        blob = bytearray(pcm16_wav_from_ints([0, 0], 16000))
        blob[34:36] = (24).to_bytes(2, "little")
        with pytest.raises(UnsupportedEncoding):
            decode_wav(bytes(blob))

    def test_three_channels_rejected(self):
        frames = np.zeros((8, 3))
        with pytest.raises(UnsupportedEncoding):
            decode_wav(reference_wav_bytes(frames, 16000))

    def test_zero_samples_is_empty_audio(self):
        with pytest.raises(EmptyAudio):
            decode_wav(pcm16_wav_from_ints([], 16000))
