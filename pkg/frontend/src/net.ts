// Websocket wrapper: sends enveloped frames, resumes the session whenever
// the socket reopens, and hands every parsed server frame to one callback.
// The WebSocket constructor is injectable so tests can supply one in node.

import { ClientMessageType, Envelope, EnvelopeFactory } from "./protocol.js";

type WebSocketLike = {
  readyState: number;
  send(data: string): void;
  close(): void;
  addEventListener(type: string, handler: (event: any) => void): void;
};

type WebSocketCtor = new (url: string) => WebSocketLike;

export interface SocketHooks {
  onFrame(frame: Envelope): void;
  onStatus(status: "connecting" | "open" | "closed"): void;
}

export class SocketClient {
  private socket: WebSocketLike | null = null;
  private envelopes = new EnvelopeFactory();
  private resumeToken: string | null = null;
  private gameId: string | null = null;
  private reconnectDelay = 500;
  private closedByUs = false;

  constructor(
    private url: string,
    private hooks: SocketHooks,
    private WebSocketImpl: WebSocketCtor = (globalThis as any).WebSocket,
  ) {}

  connect(): void {
    this.closedByUs = false;
    this.hooks.onStatus("connecting");
    const socket = new this.WebSocketImpl(this.url);
    this.socket = socket;
    socket.addEventListener("open", () => {
      this.reconnectDelay = 500;
      this.hooks.onStatus("open");
      // Fresh msg_id stream per connection.
      this.envelopes = new EnvelopeFactory();
      this.send("hello", {});
      if (this.resumeToken) {
        this.send("resume", { token: this.resumeToken }, this.gameId ?? undefined);
      }
    });
    socket.addEventListener("message", (event: MessageEvent) => {
      let frame: Envelope;
      try {
        frame = JSON.parse(String(event.data));
      } catch {
        return;
      }
      this.hooks.onFrame(frame);
    });
    socket.addEventListener("close", () => {
      this.hooks.onStatus("closed");
      if (!this.closedByUs) {
        setTimeout(() => this.connect(), this.reconnectDelay);
        this.reconnectDelay = Math.min(this.reconnectDelay * 2, 8000);
      }
    });
  }

  bindSession(resumeToken: string | null, gameId: string | null): void {
    this.resumeToken = resumeToken;
    this.gameId = gameId;
  }

  send(type: ClientMessageType, payload: unknown, gameId?: string): void {
    if (!this.socket || this.socket.readyState !== 1) {
      return;
    }
    this.socket.send(
      JSON.stringify(this.envelopes.make(type, payload, gameId ?? this.gameId ?? undefined)),
    );
  }

  close(): void {
    this.closedByUs = true;
    this.socket?.close();
  }
}
