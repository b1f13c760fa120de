/** Microphone capture to raw PCM.
 *
 * Uses an AudioContext tap rather than MediaRecorder because the service
 * wants uncompressed PCM16 WAV; MediaRecorder would hand back an opus
 * container we would then have to decode again. The browser entanglements
 * (getUserMedia, AudioContext) are injectable so the capture pipeline can
 * run under tests without a real microphone.
 */

export const MIN_CAPTURE_SECONDS = 1.0;

export type RecorderErrorCode = "PermissionDenied" | "NoAudioInput" | "CaptureTooShort";

export class RecorderError extends Error {
  readonly code: RecorderErrorCode;

  constructor(code: RecorderErrorCode, message: string) {
    super(message);
    this.name = "RecorderError";
    this.code = code;
  }
}

export interface CaptureResult {
  samples: Float32Array;
  sampleRate: number;
}

export interface RecorderLike {
  start(): Promise<void>;
  stop(): Promise<CaptureResult>;
}

interface AudioContextLike {
  readonly sampleRate: number;
  createMediaStreamSource(stream: MediaStream): AudioNode;
  createScriptProcessor(
    bufferSize: number,
    inputChannels: number,
    outputChannels: number,
  ): ScriptProcessorNode;
  readonly destination: AudioNode;
  close(): Promise<void>;
}

export interface RecorderDeps {
  getUserMedia?: (constraints: MediaStreamConstraints) => Promise<MediaStream>;
  createAudioContext?: () => AudioContextLike;
}

export class Recorder implements RecorderLike {
  private readonly getUserMedia: (c: MediaStreamConstraints) => Promise<MediaStream>;
  private readonly createAudioContext: () => AudioContextLike;

  private stream: MediaStream | null = null;
  private context: AudioContextLike | null = null;
  private processor: ScriptProcessorNode | null = null;
  private chunks: Float32Array[] = [];
  private sampleRate = 0;

  constructor(deps: RecorderDeps = {}) {
    this.getUserMedia =
      deps.getUserMedia ?? ((c) => navigator.mediaDevices.getUserMedia(c));
    this.createAudioContext =
      deps.createAudioContext ?? (() => new AudioContext() as unknown as AudioContextLike);
  }

  async start(): Promise<void> {
    if (this.context !== null) {
      throw new Error("recorder already running");
    }
    let stream: MediaStream;
    try {
      stream = await this.getUserMedia({
        audio: { echoCancellation: false, noiseSuppression: false, channelCount: 1 },
      });
    } catch (err) {
      throw mapMediaError(err);
    }

    const context = this.createAudioContext();
    const source = context.createMediaStreamSource(stream);
    const processor = context.createScriptProcessor(4096, 1, 1);

    this.chunks = [];
    this.sampleRate = context.sampleRate;
    processor.onaudioprocess = (event: AudioProcessingEvent) => {
      // Copy: the browser reuses the underlying buffer between callbacks.
      this.chunks.push(new Float32Array(event.inputBuffer.getChannelData(0)));
    };

    source.connect(processor);
    processor.connect(context.destination);

    this.stream = stream;
    this.context = context;
    this.processor = processor;
  }

  async stop(): Promise<CaptureResult> {
    const context = this.context;
    const processor = this.processor;
    if (context === null || processor === null) {
      throw new Error("recorder is not running");
    }

    processor.onaudioprocess = null;
    processor.disconnect();
    this.stream?.getTracks().forEach((track) => track.stop());
    await context.close();

    const chunks = this.chunks;
    const sampleRate = this.sampleRate;
    this.stream = null;
    this.context = null;
    this.processor = null;
    this.chunks = [];

    const total = chunks.reduce((n, c) => n + c.length, 0);
    if (total < MIN_CAPTURE_SECONDS * sampleRate) {
      throw new RecorderError(
        "CaptureTooShort",
        `captured ${(total / sampleRate).toFixed(2)}s; need at least ${MIN_CAPTURE_SECONDS}s`,
      );
    }

    const samples = new Float32Array(total);
    let offset = 0;
    for (const chunk of chunks) {
      samples.set(chunk, offset);
      offset += chunk.length;
    }
    return { samples, sampleRate };
  }
}

function mapMediaError(err: unknown): Error {
  const name = (err as { name?: string } | null)?.name;
  if (name === "NotAllowedError" || name === "SecurityError") {
    return new RecorderError("PermissionDenied", "microphone permission denied");
  }
  if (name === "NotFoundError" || name === "OverconstrainedError") {
    return new RecorderError("NoAudioInput", "no usable microphone found");
  }
  return err instanceof Error ? err : new Error(String(err));
}
