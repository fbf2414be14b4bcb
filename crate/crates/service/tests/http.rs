use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use helfi_service::{router, Store, StoreOptions};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn app_with(store: Store, static_dir: Option<PathBuf>) -> Router {
    router(Arc::new(store), static_dir)
}

fn app() -> Router {
    let (store, _) = Store::from_bytes(fixture("two_verses.tsv").as_bytes(), "fixture", StoreOptions::default()).unwrap();
    app_with(store, None)
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or(Body::empty(), |b| Body::from(b.to_string())))
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap_or(Value::Null) };
    (status, value)
}

#[tokio::test]
async fn meta_lists_books() {
    let (status, meta) = call(&app(), "GET", "/corpus/meta", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(meta["books"], json!(["ps", "hb"]));
    assert_eq!(meta["verses"], 2);
    assert_eq!(meta["revision"], 0);
}

#[tokio::test]
async fn verse_view_mirrors_the_model() {
    let (status, view) = call(&app(), "GET", "/verse/hb001:001", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["revision"], 0);
    let verse = &view["verse"];
    assert_eq!(verse["ref"], "hb001:001");
    assert_eq!(verse["source"][6]["lemma"], "λαλέω/2980&5660/2969");
    assert_eq!(verse["target"][1]["links"], "(5) 6");
    assert_eq!(verse["target"][1]["trailing_space"], true);
    let groups = view["groups"].as_array().unwrap();
    assert!(groups.iter().any(|g| g["source_ids"] == json!(["3"]) && g["target_positions"] == json!([5, 6])));

    let (status, err) = call(&app(), "GET", "/verse/zz999:999", None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::NOT_FOUND, Some("unknown_verse")));
    let (status, err) = call(&app(), "GET", "/verse/ps1:1", None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::BAD_REQUEST, Some("bad_request")));
}

#[tokio::test]
async fn neighbors() {
    let (_, n) = call(&app(), "GET", "/verse/ps001:001/neighbors", None).await;
    assert_eq!(n, json!({"prev": "ps001:001", "next": "hb001:001"}));
}

#[tokio::test]
async fn edit_conflict_undo_redo() {
    let app = app();
    let remove = json!({
        "session": "s1",
        "base_revision": 0,
        "edits": [{"op": "RemoveLink", "position": 1, "id": "5"}],
    });
    let (status, applied) = call(&app, "POST", "/verse/hb001:001/edits", Some(remove.clone())).await;
    assert_eq!(status, StatusCode::OK, "{applied}");
    assert_eq!((applied["revision"].as_u64(), applied["undo_depth"].as_u64()), (Some(1), Some(1)));
    let (_, view) = call(&app, "GET", "/verse/hb001:001", None).await;
    assert_eq!(view["verse"]["target"][1]["links"], "6");

    let (status, err) = call(&app, "POST", "/verse/hb001:001/edits", Some(remove)).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!((err["code"].as_str(), err["revision"].as_u64()), (Some("revision_conflict"), Some(1)));

    let dangling = json!({"session": "s1", "base_revision": 1, "edits": [{"op": "AddLink", "position": 1, "id": "99", "kind": "core"}]});
    let (status, err) = call(&app, "POST", "/verse/hb001:001/edits", Some(dangling)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["code"], "invariant_violation");
    assert_eq!(err["rule"], "R1-dangling-link");
    assert_eq!(err["diagnostics"][0]["rule"], "R1-dangling-link");

    let (status, undone) = call(&app, "POST", "/session/s1/undo", None).await;
    assert_eq!((status, undone["revision"].as_u64()), (StatusCode::OK, Some(2)));
    let (_, view) = call(&app, "GET", "/verse/hb001:001", None).await;
    assert_eq!(view["verse"]["target"][1]["links"], "(5) 6");
    let (status, _) = call(&app, "POST", "/session/s1/redo", None).await;
    assert_eq!(status, StatusCode::OK);
    let (status, err) = call(&app, "POST", "/session/other/undo", None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::CONFLICT, Some("nothing_to_undo")));
}

#[tokio::test]
async fn malformed_bodies_are_bad_requests() {
    let app = app();
    for body in [json!({"edits": []}), json!({"base_revision": 0, "edits": [{"op": "Teleport"}]})] {
        let (status, err) = call(&app, "POST", "/verse/ps001:001/edits", Some(body)).await;
        assert_eq!((status, err["code"].as_str()), (StatusCode::BAD_REQUEST, Some("bad_request")));
    }
    let bad_edit = json!({"base_revision": 0, "edits": [{"op": "SetNoSource", "position": 40}]});
    let (status, err) = call(&app, "POST", "/verse/ps001:001/edits", Some(bad_edit)).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::BAD_REQUEST, Some("invalid_edit")));
}

#[tokio::test]
async fn validate_search_concordance() {
    let app = app();
    let (_, report) = call(&app, "GET", "/validate", None).await;
    assert_eq!((report["errors"].as_u64(), report["verses"].as_u64()), (Some(0), Some(2)));
    let (_, report) = call(&app, "GET", "/validate?scope=ps001:001", None).await;
    assert_eq!(report["verses"], 1);

    let (_, hits) = call(&app, "GET", "/search?q=835&type=strong", None).await;
    assert_eq!(hits, json!([{"verse": "ps001:001", "side": "source", "index": 0, "id": "1"}]));
    let (_, hits) = call(&app, "GET", "/search?q=%CE%B8%CE%B5%CF%8C%CF%82&type=lemma", None).await;
    assert_eq!(hits[0]["id"], "6");
    let (_, hits) = call(&app, "GET", "/search?q=nothing", None).await;
    assert_eq!(hits, json!([]));
    let (status, _) = call(&app, "GET", "/search?q=x&type=gloss", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, entry) = call(&app, "GET", "/concordance/autuas", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!((entry["total"].as_u64(), entry["groups"][0]["strong"].as_str()), (Some(1), Some("835")));
    let (_, entry) = call(&app, "GET", "/concordance/sitten_kuin", None).await;
    assert_eq!(entry["total"], 1);
    let (status, err) = call(&app, "GET", "/concordance/kissa", None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::NOT_FOUND, Some("unknown_headword")));
}

#[tokio::test]
async fn save_through_the_api() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.tsv");
    let app = app();
    let (status, err) = call(&app, "POST", "/save", None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("no_path")));
    let (status, saved) = call(&app, "POST", "/save", Some(json!({"path": path}))).await;
    assert_eq!(status, StatusCode::OK, "{saved}");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), fixture("two_verses.tsv"));
    let (_, meta) = call(&app, "GET", "/corpus/meta", None).await;
    assert_eq!(meta["path"], json!(path));
}

#[tokio::test]
async fn static_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<p>editor</p>").unwrap();
    let (store, _) = Store::from_bytes(fixture("two_verses.tsv").as_bytes(), "", StoreOptions::default()).unwrap();
    let app = app_with(store, Some(dir.path().to_path_buf()));
    let response = app.clone().oneshot(Request::get("/index.html").body(Body::empty()).unwrap()).await.unwrap();
    assert_eq!(response.status(), StatusCode::OK);
    let body = response.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(&body[..], b"<p>editor</p>");
    let (status, _) = call(&app, "GET", "/corpus/meta", None).await;
    assert_eq!(status, StatusCode::OK);
}
