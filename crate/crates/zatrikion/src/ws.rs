//! WebSocket bridge: the line protocol over text frames, one session per
//! connection, with state push enabled.

use std::io;
use std::net::{SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::sync::{mpsc, Arc};
use std::time::Duration;

use tungstenite::{Message, WebSocket};
use zatrikion_core::Variant;

use crate::protocol::{Flow, Session, Sink};

const POLL: Duration = Duration::from_millis(20);

pub struct Server {
    listener: TcpListener,
    variant: Variant,
}

impl Server {
    /// Fails if the address is taken.
    pub fn bind(addr: impl ToSocketAddrs, variant: Variant) -> io::Result<Server> {
        Ok(Server {
            listener: TcpListener::bind(addr)?,
            variant,
        })
    }

    pub fn local_addr(&self) -> io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    /// Accepts connections forever, each on its own thread.
    pub fn run(self) -> io::Result<()> {
        for stream in self.listener.incoming() {
            let stream = stream?;
            let variant = self.variant;
            std::thread::spawn(move || {
                // A dropped client is not a server error.
                let _ = serve_connection(stream, variant);
            });
        }
        Ok(())
    }
}

fn would_block(e: &tungstenite::Error) -> bool {
    matches!(e, tungstenite::Error::Io(io) if matches!(io.kind(), io::ErrorKind::WouldBlock | io::ErrorKind::TimedOut))
}

fn flush_lines(ws: &mut WebSocket<TcpStream>, rx: &mpsc::Receiver<String>) -> tungstenite::Result<()> {
    while let Ok(line) = rx.try_recv() {
        ws.send(Message::text(line))?;
    }
    Ok(())
}

fn serve_connection(stream: TcpStream, variant: Variant) -> tungstenite::Result<()> {
    let mut ws = tungstenite::accept(stream).map_err(|e| match e {
        tungstenite::HandshakeError::Failure(e) => e,
        tungstenite::HandshakeError::Interrupted(_) => tungstenite::Error::ConnectionClosed,
    })?;
    ws.get_ref().set_read_timeout(Some(POLL))?;
    let (tx, rx) = mpsc::channel::<String>();
    let sink: Sink = Arc::new(move |line| {
        let _ = tx.send(line);
    });
    let mut session = Session::new(variant, sink).with_state_push(true);
    loop {
        let mut quit = false;
        match ws.read() {
            Ok(Message::Text(text)) => {
                for line in text.as_str().lines() {
                    if session.execute(line) == Flow::Quit {
                        quit = true;
                        break;
                    }
                }
            }
            Ok(Message::Binary(_)) => ws.send(Message::text("error malformed-frame"))?,
            Ok(Message::Close(_)) => quit = true,
            Ok(_) => {}
            Err(e) if would_block(&e) => {}
            Err(tungstenite::Error::ConnectionClosed | tungstenite::Error::AlreadyClosed) => return Ok(()),
            Err(e) => return Err(e),
        }
        flush_lines(&mut ws, &rx)?;
        if quit {
            session.wait();
            flush_lines(&mut ws, &rx)?;
            let _ = ws.close(None);
            let _ = ws.flush();
            return Ok(());
        }
    }
}
